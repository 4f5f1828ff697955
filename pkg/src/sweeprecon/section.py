"""Cross-section shapes swept along the silhouette profile.

Every section is a simple, counter-clockwise polygon in the ``(x, z)``
plane (``x`` lateral, ``z`` depth) with lateral extent exactly ``[-1, 1]``,
so a ring scaled by halfwidth ``h`` projects to a silhouette of width ``2h``.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import DecodeError, DegeneratePolygon, InvalidK, InvalidRatio

DEFAULT_CIRCLE_SAMPLES = 32


def signed_area(points):
    """Shoelace area; positive for counter-clockwise polygons."""
    p = np.asarray(points, dtype=np.float64)
    x, z = p[:, 0], p[:, 1]
    return 0.5 * float(np.sum(x * np.roll(z, -1) - np.roll(x, -1) * z))


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(a, b, p):
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_intersect(a, b, c, d):
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if ((o1 > 0) != (o2 > 0) and o1 != 0 and o2 != 0
            and (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0):
        return True
    return ((o1 == 0 and _on_segment(a, b, c)) or (o2 == 0 and _on_segment(a, b, d))
            or (o3 == 0 and _on_segment(c, d, a)) or (o4 == 0 and _on_segment(c, d, b)))


def is_simple(points):
    """True when no two non-adjacent edges touch and no edge has zero length."""
    p = [tuple(v) for v in np.asarray(points, dtype=np.float64)]
    k = len(p)
    edges = [(p[i], p[(i + 1) % k]) for i in range(k)]
    if any(a == b for a, b in edges):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            if j == i + 1 or (i == 0 and j == k - 1):
                continue
            if _segments_intersect(*edges[i], *edges[j]):
                return False
    return True


def arc_length_params(points):
    p = np.asarray(points, dtype=np.float64)
    seg = np.linalg.norm(np.roll(p, -1, axis=0) - p, axis=1)
    cum = np.concatenate(([0.0], np.cumsum(seg)[:-1]))
    return cum / seg.sum()


@dataclass(frozen=True)
class CrossSection:
    """Closed polygon ``points`` (K, 2) with arc-length parameters ``params``."""

    points: np.ndarray
    params: np.ndarray

    def __post_init__(self):
        for name in ("points", "params"):
            a = np.array(getattr(self, name), dtype=np.float64)
            a.flags.writeable = False
            object.__setattr__(self, name, a)

    def __len__(self):
        return self.points.shape[0]

    @property
    def area(self):
        return signed_area(self.points)

    def centroid(self):
        """Area centroid of the polygon."""
        x, z = self.points[:, 0], self.points[:, 1]
        xn, zn = np.roll(x, -1), np.roll(z, -1)
        cross = x * zn - xn * z
        a = cross.sum() / 2.0
        return np.array([((x + xn) * cross).sum() / (6 * a),
                         ((z + zn) * cross).sum() / (6 * a)])


def make_circle(k=DEFAULT_CIRCLE_SAMPLES):
    """Regular ``k``-gon inscribed in the unit circle, first vertex at (1, 0).

    Odd ``k`` never reaches ``x = -1``; such polygons are shifted and
    uniformly rescaled to the ``[-1, 1]`` lateral extent.
    """
    if not isinstance(k, (int, np.integer)) or k < 3:
        raise InvalidK(f"circle needs at least 3 samples, got {k}")
    ang = 2.0 * np.pi * np.arange(k) / k
    pts = np.column_stack([np.cos(ang), np.sin(ang)])
    # pin the lateral extremes to exactly +-1 and kill cos/sin rounding noise
    pts[0] = (1.0, 0.0)
    if k % 2 == 0:
        pts[k // 2] = (-1.0, 0.0)
    if k % 4 == 0:
        pts[k // 4] = (0.0, 1.0)
        pts[3 * k // 4] = (0.0, -1.0)
    # exact reflection symmetry z -> -z
    j = np.arange(1, (k + 1) // 2)
    pts[k - j, 0] = pts[j, 0]
    pts[k - j, 1] = -pts[j, 1]
    if k % 2:
        xmin = pts[:, 0].min()
        left = pts[:, 0] == xmin
        scale = 2.0 / (1.0 - xmin)
        pts = np.column_stack([(pts[:, 0] - (1.0 + xmin) / 2.0) * scale, pts[:, 1] * scale])
        pts[0, 0] = 1.0
        pts[left, 0] = -1.0
    return CrossSection(pts, np.arange(k) / k)


def make_rectangle(depth_ratio=1.0):
    """Rectangle with corners ``(+-1, +-depth_ratio)``, starting at (1, -depth_ratio)."""
    if not depth_ratio > 0 or not math.isfinite(depth_ratio):
        raise InvalidRatio(f"depth ratio must be positive, got {depth_ratio}")
    d = float(depth_ratio)
    pts = np.array([(1.0, -d), (1.0, d), (-1.0, d), (-1.0, -d)])
    return CrossSection(pts, arc_length_params(pts))


def make_triangle():
    """Equilateral triangle with side 2, centroid at the origin."""
    r = 2.0 / math.sqrt(3.0)
    pts = np.array([(0.0, r), (-1.0, -r / 2.0), (1.0, -r / 2.0)])
    return CrossSection(pts, arc_length_params(pts))


def from_polygon(raw):
    """Normalise an arbitrary simple polygon to a :class:`CrossSection`.

    The polygon is centred on its lateral midrange and scaled uniformly so
    that its lateral extent is ``[-1, 1]``; clockwise input is reversed.

    Raises
    ------
    DegeneratePolygon
        Fewer than 3 points, zero lateral extent, zero area, or
        self-intersection.
    """
    p = np.asarray(raw, dtype=np.float64)
    if p.ndim != 2 or p.shape[1] != 2 or p.shape[0] < 3:
        raise DegeneratePolygon("a cross-section needs at least 3 (x, z) points")
    if not np.all(np.isfinite(p)):
        raise DegeneratePolygon("non-finite coordinates")
    xmin, xmax = p[:, 0].min(), p[:, 0].max()
    if not xmax > xmin:
        raise DegeneratePolygon("polygon has zero lateral extent")
    if not is_simple(p):
        raise DegeneratePolygon("polygon is self-intersecting")
    mid = (xmin + xmax) / 2.0
    scale = 2.0 / (xmax - xmin)
    q = np.column_stack([(p[:, 0] - mid) * scale, p[:, 1] * scale])
    # exact lateral extremes, independent of rounding in the affine map
    q[p[:, 0] == xmin, 0] = -1.0
    q[p[:, 0] == xmax, 0] = 1.0
    area = signed_area(q)
    if area == 0.0:
        raise DegeneratePolygon("polygon has zero area")
    if area < 0:
        q = q[::-1].copy()
    return CrossSection(q, arc_length_params(q))


def load_polygon(path):
    """Read "x z" pairs, one per line; '#' starts a comment."""
    pts = []
    try:
        with open(path, encoding="utf-8") as fh:
            for n, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise DecodeError(f"{path}:{n}: expected 'x z'")
                try:
                    pts.append((float(parts[0]), float(parts[1])))
                except ValueError as exc:
                    raise DecodeError(f"{path}:{n}: {exc}") from exc
    except OSError as exc:
        raise DecodeError(f"cannot read polygon file {path}: {exc}") from exc
    return from_polygon(pts)
