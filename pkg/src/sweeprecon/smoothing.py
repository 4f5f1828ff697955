"""Savitzky-Golay least-squares smoothing of silhouette profiles."""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .silhouette import SilhouetteProfile

log = logging.getLogger(__name__)

EDGE_MODES = ("mirror", "nearest")


@dataclass(frozen=True)
class SavGolKernel:
    window: int
    order: int
    weights: tuple

    @property
    def half(self):
        return (self.window - 1) // 2


def _solve(a, b):
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting."""
    n = len(a)
    m = [list(map(float, row)) + [float(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0.0:
            raise InvalidParams("singular normal equations")
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f != 0.0:
                for c in range(col, n + 1):
                    m[r][c] -= f * m[col][c]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n] - sum(m[r][c] * x[c] for c in range(r + 1, n))
        x[r] = acc / m[r][r]
    return x


def savgol_coefficients(window, order):
    """Smoothing weights of a centred Savitzky-Golay filter.

    The weights are the row of the least-squares projection onto
    polynomials of degree ``<= order`` (sampled at ``-h..h``) that
    evaluates the fit at the window centre. They are obtained from the
    ``(order+1) x (order+1)`` normal equations ``(A^T A) z = e_0`` with
    ``weights = A z``.

    Parameters
    ----------
    window : int
        Odd window length, at least 3.
    order : int
        Polynomial degree, ``0 <= order < window``.
    """
    if (not isinstance(window, (int, np.integer)) or not isinstance(order, (int, np.integer))
            or window < 3 or window % 2 == 0 or not 0 <= order < window):
        raise InvalidParams(
            f"need an odd window >= 3 and 0 <= order < window, got ({window}, {order})")
    h = (window - 1) // 2
    t = range(-h, h + 1)
    design = [[float(ti) ** j for j in range(order + 1)] for ti in t]
    normal = [[sum(design[i][p] * design[i][q] for i in range(window))
               for q in range(order + 1)] for p in range(order + 1)]
    e0 = [1.0] + [0.0] * order
    z = _solve(normal, e0)
    w = np.array([sum(row[j] * z[j] for j in range(order + 1)) for row in design])
    # exact projection is symmetric; remove rounding asymmetry
    w = (w + w[::-1]) / 2.0
    return SavGolKernel(int(window), int(order), tuple(float(v) for v in w))


def smooth_series(series, kernel, edge_mode="mirror"):
    """Apply the kernel along a 1-D series, keeping its length.

    ``mirror`` reflects about the end samples without repeating them;
    ``nearest`` repeats the end samples. Series shorter than the window are
    returned unchanged.
    """
    x = np.asarray(series, dtype=np.float64)
    if edge_mode not in EDGE_MODES:
        raise InvalidParams(f"unknown edge mode {edge_mode!r}")
    if x.size < kernel.window:
        return x.copy()
    h = kernel.half
    padded = np.pad(x, h, mode="reflect" if edge_mode == "mirror" else "edge")
    w = np.asarray(kernel.weights)
    return np.convolve(padded, w[::-1], mode="valid")


def smooth_profile(profile, kernel, smooth_radius=False, edge_mode="mirror"):
    """Smooth the profile centreline and, optionally, its halfwidth.

    Halfwidths that would drop below 1 px after smoothing are clamped to
    1 px with a warning.
    """
    center = smooth_series(profile.center, kernel, edge_mode)
    if not smooth_radius:
        return SilhouetteProfile(profile.y0, center, profile.halfwidth)
    halfwidth = smooth_series(profile.halfwidth, kernel, edge_mode)
    low = halfwidth < 1.0
    if low.any():
        log.warning("clamped %d smoothed halfwidth(s) to 1 px", int(low.sum()))
        halfwidth = np.where(low, 1.0, halfwidth)
    return SilhouetteProfile(profile.y0, center, halfwidth)
