# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_fallback``. Same signatures, same output."""
import numpy as np
cimport numpy as cnp
from libc.math cimport floor

cnp.import_array()


cdef inline Py_ssize_t _iabs(Py_ssize_t v) noexcept nogil:
    return -v if v < 0 else v


cdef inline Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t root = i, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


cdef inline void _union(Py_ssize_t[::1] parent, Py_ssize_t a, Py_ssize_t b) noexcept nogil:
    cdef Py_ssize_t ra = _find(parent, a), rb = _find(parent, b)
    if ra < rb:
        parent[rb] = ra
    elif rb < ra:
        parent[ra] = rb


def label4(mask):
    cdef cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = m.shape[0], w = m.shape[1]
    cdef Py_ssize_t x, y, nxt_id = 0, root
    provisional = np.full((h, w), -1, dtype=np.intp)
    cdef Py_ssize_t[:, ::1] prov = provisional
    parent_arr = np.arange(h * w // 2 + 2, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    labels_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    remap_arr = np.zeros(h * w // 2 + 2, dtype=np.int32)
    cdef cnp.int32_t[::1] remap = remap_arr
    cdef cnp.int32_t count = 0
    cdef bint up, lf

    with nogil:
        for y in range(h):
            for x in range(w):
                if not m[y, x]:
                    continue
                up = y > 0 and m[y - 1, x]
                lf = x > 0 and m[y, x - 1]
                if up and lf:
                    prov[y, x] = prov[y, x - 1]
                    _union(parent, prov[y - 1, x], prov[y, x - 1])
                elif up:
                    prov[y, x] = prov[y - 1, x]
                elif lf:
                    prov[y, x] = prov[y, x - 1]
                else:
                    prov[y, x] = nxt_id
                    nxt_id += 1
        for y in range(h):
            for x in range(w):
                if prov[y, x] < 0:
                    continue
                root = _find(parent, prov[y, x])
                if remap[root] == 0:
                    count += 1
                    remap[root] = count
                labels[y, x] = remap[root]
    return labels_arr, int(count)


def trace_rows(mask, Py_ssize_t y0, Py_ssize_t left0, Py_ssize_t right0,
               Py_ssize_t window, Py_ssize_t gap_max, Py_ssize_t min_width):
    cdef cnp.uint8_t[:, ::1] m = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t h = m.shape[0], w = m.shape[1]
    left_arr = np.empty(h, dtype=np.int64)
    right_arr = np.empty(h, dtype=np.int64)
    obs_arr = np.zeros(h, dtype=np.uint8)
    cdef cnp.int64_t[::1] left = left_arr
    cdef cnp.int64_t[::1] right = right_arr
    cdef cnp.uint8_t[::1] obs = obs_arr
    cdef Py_ssize_t n = 1, y, x, a, b, best_a, best_b, reach, gap = 0
    cdef Py_ssize_t ref_l = left0, ref_r = right0

    left[0] = left0
    right[0] = right0
    obs[0] = 1
    if right0 - left0 < min_width:
        return left_arr[:1].copy(), right_arr[:1].copy(), obs_arr[:1].copy()

    with nogil:
        for y in range(y0 + 1, h):
            reach = window * (gap + 1)
            best_a = -1
            best_b = -2
            x = 0
            while x < w:
                if m[y, x]:
                    a = x
                    while x + 1 < w and m[y, x + 1]:
                        x += 1
                    b = x
                    if a <= ref_r and b >= ref_l and b - a > best_b - best_a:
                        best_a = a
                        best_b = b
                x += 1
            if (best_a >= 0 and _iabs(best_a - ref_l) <= reach
                    and _iabs(best_b - ref_r) <= reach):
                if best_b - best_a < min_width:
                    break
                left[n] = best_a
                right[n] = best_b
                obs[n] = 1
                ref_l = best_a
                ref_r = best_b
                gap = 0
                n += 1
            else:
                gap += 1
                if gap > gap_max:
                    break
                left[n] = ref_l
                right[n] = ref_r
                obs[n] = 0
                n += 1
        while obs[n - 1] == 0:
            n -= 1
    return left_arr[:n].copy(), right_arr[:n].copy(), obs_arr[:n].copy()


def sample_rows(image, ys, xs, lo, hi):
    cdef double[:, :, ::1] img = np.ascontiguousarray(image, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64)
    cdef double[:, ::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] lov = np.ascontiguousarray(lo, dtype=np.float64)
    cdef double[::1] hiv = np.ascontiguousarray(hi, dtype=np.float64)
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1], nc = img.shape[2]
    cdef Py_ssize_t nt = xv.shape[0], ns = xv.shape[1]
    out_arr = np.empty((nt, ns, nc), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr
    cdef Py_ssize_t t, s, c, r0, r1, x0, x1
    cdef double y, fy, x, fx, top, bot

    with nogil:
        for t in range(nt):
            y = yv[t]
            if y < 0.0:
                y = 0.0
            if y > h - 1.0:
                y = h - 1.0
            r0 = <Py_ssize_t>floor(y)
            r1 = r0 + 1 if r0 + 1 < h else h - 1
            fy = y - r0
            for s in range(ns):
                x = xv[t, s]
                if x < lov[r0]:
                    x = lov[r0]
                if x > hiv[r0]:
                    x = hiv[r0]
                x0 = <Py_ssize_t>floor(x)
                x1 = x0 + 1 if x0 + 1 < w else w - 1
                fx = x - x0
                for c in range(nc):
                    out[t, s, c] = img[r0, x0, c] * (1.0 - fx) + img[r0, x1, c] * fx
                if fy > 0.0:
                    x = xv[t, s]
                    if x < lov[r1]:
                        x = lov[r1]
                    if x > hiv[r1]:
                        x = hiv[r1]
                    x0 = <Py_ssize_t>floor(x)
                    x1 = x0 + 1 if x0 + 1 < w else w - 1
                    fx = x - x0
                    for c in range(nc):
                        bot = img[r1, x0, c] * (1.0 - fx) + img[r1, x1, c] * fx
                        out[t, s, c] = out[t, s, c] * (1.0 - fy) + bot * fy
    return out_arr
