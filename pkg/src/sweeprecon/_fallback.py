"""Pure-Python/numpy implementations of the hot kernels.

Each function here has a compiled twin in ``_kernels.pyx`` with the same
signature and bit-identical output. ``sweeprecon._core`` picks one at import.
"""
import numpy as np


def row_runs(row):
    """Return ``(starts, ends)`` of the foreground runs of a boolean row.

    ``ends`` are inclusive column indices.
    """
    padded = np.concatenate(([False], np.asarray(row, dtype=bool), [False]))
    diff = np.diff(padded.view(np.int8))
    starts = np.flatnonzero(diff == 1)
    ends = np.flatnonzero(diff == -1) - 1
    return starts, ends


def _find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        parent[i], i = root, parent[i]
    return root


def label4(mask):
    """Label 4-connected foreground components.

    Labels run 1..n in raster order of each component's first pixel.
    Returns ``(labels, n)`` with ``labels`` an int32 array.
    """
    mask = np.asarray(mask, dtype=bool)
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int32)
    parent = []
    runs = []  # (y, start, end, run_id)
    prev = []
    for y in range(h):
        starts, ends = row_runs(mask[y])
        cur = []
        j = 0
        for a, b in zip(starts.tolist(), ends.tolist()):
            rid = len(parent)
            parent.append(rid)
            # previous-row runs sharing at least one column
            while j < len(prev) and prev[j][1] < a:
                j += 1
            k = j
            while k < len(prev) and prev[k][0] <= b:
                ra = _find(parent, prev[k][2])
                rb = _find(parent, rid)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
                k += 1
            cur.append((a, b, rid))
            runs.append((y, a, b, rid))
        prev = cur

    remap = {}
    for y, a, b, rid in runs:
        root = _find(parent, rid)
        lab = remap.get(root)
        if lab is None:
            lab = len(remap) + 1
            remap[root] = lab
        labels[y, a:b + 1] = lab
    return labels, len(remap)


def trace_rows(mask, y0, left0, right0, window, gap_max, min_width):
    """Sweep downward from row ``y0`` following one foreground run per row.

    Returns int arrays ``left``, ``right`` and uint8 ``observed`` covering
    rows ``y0 .. y0 + len - 1``. Unobserved rows carry the last accepted
    edges; trailing unobserved rows are trimmed.
    """
    mask = np.asarray(mask, dtype=bool)
    h = mask.shape[0]
    left = [int(left0)]
    right = [int(right0)]
    observed = [1]
    if right0 - left0 < min_width:
        return (np.array(left, np.int64), np.array(right, np.int64),
                np.array(observed, np.uint8))
    ref_l, ref_r = int(left0), int(right0)
    gap = 0
    for y in range(y0 + 1, h):
        reach = window * (gap + 1)
        starts, ends = row_runs(mask[y])
        best_a, best_b = -1, -2
        for a, b in zip(starts.tolist(), ends.tolist()):
            if a <= ref_r and b >= ref_l and b - a > best_b - best_a:
                best_a, best_b = a, b
        if (best_a >= 0 and abs(best_a - ref_l) <= reach
                and abs(best_b - ref_r) <= reach):
            if best_b - best_a < min_width:
                break
            left.append(best_a)
            right.append(best_b)
            observed.append(1)
            ref_l, ref_r = best_a, best_b
            gap = 0
        else:
            gap += 1
            if gap > gap_max:
                break
            left.append(ref_l)
            right.append(ref_r)
            observed.append(0)
    while observed[-1] == 0:
        left.pop()
        right.pop()
        observed.pop()
    return (np.array(left, np.int64), np.array(right, np.int64),
            np.array(observed, np.uint8))


def _clamped_row_sample(image, r, xs, lo, hi):
    x = np.clip(xs, lo[r], hi[r])
    x0 = np.floor(x).astype(np.int64)
    x1 = np.minimum(x0 + 1, image.shape[1] - 1)
    fx = (x - x0)[:, None]
    row = image[r]
    return row[x0] * (1.0 - fx) + row[x1] * fx


def sample_rows(image, ys, xs, lo, hi):
    """Bilinear sampling with per-source-row horizontal clamping.

    ``image`` is (H, W, C) float64, ``ys`` has shape (T,), ``xs`` shape
    (T, S). Before interpolating inside source row ``r`` the abscissa is
    clamped to ``[lo[r], hi[r]]``. Returns (T, S, C) float64.
    """
    image = np.asarray(image, dtype=np.float64)
    h = image.shape[0]
    out = np.empty((xs.shape[0], xs.shape[1], image.shape[2]))
    for t in range(xs.shape[0]):
        y = min(max(float(ys[t]), 0.0), h - 1.0)
        r0 = int(np.floor(y))
        r1 = min(r0 + 1, h - 1)
        fy = y - r0
        top = _clamped_row_sample(image, r0, xs[t], lo, hi)
        if fy > 0.0:
            bot = _clamped_row_sample(image, r1, xs[t], lo, hi)
            out[t] = top * (1.0 - fy) + bot * fy
        else:
            out[t] = top
    return out
