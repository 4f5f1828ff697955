"""Synthetic ground truth: known extruded shapes, their renders, and scoring.

Renders are orthographic front views; a pixel belongs to the object on row
``y`` iff ``|x - center(y)| <= halfwidth(y)``. The mask returned alongside
each render is that exact predicate (no anti-aliasing, no noise).
"""
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoOverlap, OutOfBounds, ParseError
from .raster import BinaryMask, RasterImage

SHAPES = ("cylinder", "cone", "vase", "s-curve")
PATTERNS = ("flat", "stripes", "bands")
MARGIN = 10
TRUTH_HEADER = "y,center,halfwidth"


@dataclass(frozen=True)
class TruthProfile:
    y0: int
    center: np.ndarray
    halfwidth: np.ndarray
    shape: str = "custom"

    def __post_init__(self):
        c = np.array(self.center, dtype=np.float64)
        h = np.array(self.halfwidth, dtype=np.float64)
        if c.ndim != 1 or c.shape != h.shape or c.size < 2:
            raise ValueError("truth needs at least two rows of center/halfwidth")
        if not np.all(h > 0):
            raise ValueError("truth halfwidth must be positive")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "halfwidth", h)

    def __len__(self):
        return self.center.size

    @property
    def rows(self):
        return np.arange(self.y0, self.y0 + len(self))

    def to_csv(self):
        buf = io.StringIO()
        buf.write(TRUTH_HEADER + "\n")
        for y, c, h in zip(self.rows, self.center, self.halfwidth):
            buf.write(f"{y},{c:.3f},{h:.3f}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, shape="custom"):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].strip() != TRUTH_HEADER:
            raise ParseError(f"expected header '{TRUTH_HEADER}'", 1)
        ys, cs, hs = [], [], []
        for n, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 3:
                raise ParseError("expected 3 fields", n)
            try:
                ys.append(int(parts[0]))
                cs.append(float(parts[1]))
                hs.append(float(parts[2]))
            except ValueError as exc:
                raise ParseError(str(exc), n) from exc
        if len(ys) < 2 or np.any(np.diff(ys) != 1):
            raise ParseError("truth rows must be contiguous and at least two")
        return cls(ys[0], cs, hs, shape)


@dataclass(frozen=True)
class ProfileMetrics:
    rmse_halfwidth: float
    rmse_center: float
    max_abs_err: float
    row_coverage: float

    def report(self):
        return (f"rmse_center={self.rmse_center:.3f} rmse_halfwidth={self.rmse_halfwidth:.3f} "
                f"max_abs_err={self.max_abs_err:.3f} coverage={self.row_coverage:.3f}")


@dataclass(frozen=True)
class Style:
    background: tuple = (220, 220, 220)
    foreground: tuple = (40, 80, 150)
    accent: tuple = (150, 40, 40)
    pattern: str = "flat"
    n_stripes: int = 12
    band_height: int = 20


def standard_shapes():
    """The four 512x512 fixtures, rows 100..400."""
    y = np.arange(100, 401, dtype=np.float64)
    phase = 2.0 * np.pi * (y - 100.0) / 300.0
    const = np.full_like(y, 256.0)
    return [
        TruthProfile(100, const, np.full_like(y, 50.0), "cylinder"),
        TruthProfile(100, const, 80.0 - 78.0 * (y - 100.0) / 300.0, "cone"),
        TruthProfile(100, const, 60.0 + 25.0 * np.sin(phase), "vase"),
        TruthProfile(100, 256.0 + 30.0 * np.sin(phase), np.full_like(y, 40.0), "s-curve"),
    ]


def shape_by_name(name):
    for t in standard_shapes():
        if t.shape == name:
            return t
    raise KeyError(f"unknown shape {name!r}; choose from {', '.join(SHAPES)}")


def truth_mask(truth, size=(512, 512)):
    width, height = size
    bits = np.zeros((height, width), dtype=bool)
    xs = np.arange(width, dtype=np.float64)
    for y, c, h in zip(truth.rows, truth.center, truth.halfwidth):
        bits[y] = np.abs(xs - c) <= h
    return BinaryMask(width, height, bits)


def render_scene(truth, size=(512, 512), style=None, noise=0, seed=0):
    """Render ``truth`` as an RGBA front view and return ``(image, mask)``.

    ``noise`` is the amplitude, in 8-bit levels (0..8), of independent
    uniform integer noise added to every colour channel of every pixel.
    """
    style = style or Style()
    width, height = size
    if style.pattern not in PATTERNS:
        raise ValueError(f"unknown pattern {style.pattern!r}")
    if not 0 <= noise <= 8:
        raise ValueError("noise amplitude must lie in 0..8")
    lo = truth.center - truth.halfwidth
    hi = truth.center + truth.halfwidth
    if (truth.y0 < MARGIN or truth.y0 + len(truth) - 1 > height - 1 - MARGIN
            or lo.min() < MARGIN or hi.max() > width - 1 - MARGIN):
        raise OutOfBounds(f"truth does not fit {width}x{height} with a {MARGIN} px margin")

    mask = truth_mask(truth, size)
    rgb = np.empty((height, width, 3), dtype=np.int16)
    rgb[:] = style.background
    fg = np.array(style.foreground, dtype=np.int16)
    accent = np.array(style.accent, dtype=np.int16)
    xs = np.arange(width, dtype=np.float64)
    for i, (y, c, h) in enumerate(zip(truth.rows, truth.center, truth.halfwidth)):
        row = mask.bits[y]
        if style.pattern == "stripes":
            s = (xs[row] - c) / h
            idx = np.minimum(np.floor((s + 1.0) / 2.0 * style.n_stripes), style.n_stripes - 1)
            rgb[y, row] = np.where((idx % 2 == 0)[:, None], fg, accent)
        elif style.pattern == "bands":
            rgb[y, row] = fg if (i // style.band_height) % 2 == 0 else accent
        else:
            rgb[y, row] = fg
    if noise:
        rng = np.random.default_rng(seed)
        rgb += rng.integers(-noise, noise + 1, size=rgb.shape).astype(np.int16)
    img = RasterImage.from_array(np.clip(rgb, 0, 255).astype(np.uint8))
    return img, mask


def compare_profiles(recovered, truth):
    """Per-row errors of a recovered profile over the rows both cover.

    Raises
    ------
    NoOverlap
        If the row ranges are disjoint.
    """
    a0, a1 = recovered.y0, recovered.y0 + len(recovered)
    b0, b1 = truth.y0, truth.y0 + len(truth)
    lo, hi = max(a0, b0), min(a1, b1)
    if hi <= lo:
        raise NoOverlap(f"recovered rows {a0}..{a1 - 1} and truth rows {b0}..{b1 - 1} are disjoint")
    dc = np.asarray(recovered.center)[lo - a0:hi - a0] - truth.center[lo - b0:hi - b0]
    dh = np.asarray(recovered.halfwidth)[lo - a0:hi - a0] - truth.halfwidth[lo - b0:hi - b0]
    return ProfileMetrics(
        rmse_halfwidth=float(np.sqrt(np.mean(dh ** 2))),
        rmse_center=float(np.sqrt(np.mean(dc ** 2))),
        max_abs_err=float(max(np.abs(dc).max(), np.abs(dh).max())),
        row_coverage=(hi - lo) / len(truth),
    )


def _sample_bilinear(tex, u, v):
    h, w = tex.shape[:2]
    x = np.clip(u, 0.0, 1.0) * (w - 1)
    y = (1.0 - np.clip(v, 0.0, 1.0)) * (h - 1)
    x0 = np.minimum(np.floor(x).astype(int), w - 2)
    y0 = np.minimum(np.floor(y).astype(int), h - 2)
    fx = (x - x0)[:, None]
    fy = (y - y0)[:, None]
    top = tex[y0, x0] * (1 - fx) + tex[y0, x0 + 1] * fx
    bot = tex[y0 + 1, x0] * (1 - fx) + tex[y0 + 1, x0 + 1] * fx
    return top * (1 - fy) + bot * fy


def rasterize_front(mesh, texture, size):
    """Orthographic, textured render of the mesh as seen from +z.

    Image pixel ``(col, row)`` looks at model ``(col, -row)``. Only
    triangles facing the viewer are drawn, nearest depth wins. Returns an
    (H, W, 3) float array and the coverage mask.
    """
    width, height = size
    tex = np.asarray(texture.pixels[:, :, :3], dtype=np.float64)
    color = np.zeros((height, width, 3))
    depth = np.full((height, width), -np.inf)
    v = mesh.vertices
    for tri in mesh.triangles:
        p = v[tri]
        px, py, pz = p[:, 0], -p[:, 1], p[:, 2]
        area = (px[1] - px[0]) * (py[2] - py[0]) - (px[2] - px[0]) * (py[1] - py[0])
        # facing +z in model space == clockwise in image (y-down) coordinates
        if area >= 0.0:
            continue
        x0, x1 = max(int(math.ceil(px.min())), 0), min(int(math.floor(px.max())), width - 1)
        y0, y1 = max(int(math.ceil(py.min())), 0), min(int(math.floor(py.max())), height - 1)
        if x0 > x1 or y0 > y1:
            continue
        gx, gy = np.meshgrid(np.arange(x0, x1 + 1, dtype=np.float64),
                             np.arange(y0, y1 + 1, dtype=np.float64))
        gx, gy = gx.ravel(), gy.ravel()
        w0 = ((px[1] - gx) * (py[2] - gy) - (px[2] - gx) * (py[1] - gy)) / area
        w1 = ((px[2] - gx) * (py[0] - gy) - (px[0] - gx) * (py[2] - gy)) / area
        w2 = 1.0 - w0 - w1
        inside = (w0 >= -1e-9) & (w1 >= -1e-9) & (w2 >= -1e-9)
        if not inside.any():
            continue
        w = np.column_stack([w0, w1, w2])[inside]
        cx, cy = gx[inside].astype(int), gy[inside].astype(int)
        z = w @ pz
        nearer = z > depth[cy, cx]
        if not nearer.any():
            continue
        w, cx, cy, z = w[nearer], cx[nearer], cy[nearer], z[nearer]
        uv = w @ mesh.uvs[tri]
        color[cy, cx] = _sample_bilinear(tex, uv[:, 0], uv[:, 1])
        depth[cy, cx] = z
    return color, np.isfinite(depth)
