"""Rectified texture strips and mirror-doubled cylindrical UVs."""
import math
import re
from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import EmptyProfile
from .raster import RasterImage


@dataclass(frozen=True)
class TextureStrip:
    """Unwrapped front texture; row 0 is profile row ``y_top``."""

    image: RasterImage
    y_top: int
    y_bottom: int


@dataclass(frozen=True)
class Material:
    name: str
    diffuse_map: str

    def __post_init__(self):
        if not self.name or re.search(r"\s", self.name):
            raise ValueError(f"material name must be non-empty without whitespace: {self.name!r}")


def default_strip_size(profile):
    """``(width, height)``: widest row rounded up to even, one row per profile row."""
    w = int(math.ceil(float(np.max(profile.right - profile.left)) + 1.0 - 1e-9))
    w += w % 2
    return max(w, 2), max(len(profile), 2)


def rectify_texture(img, profile, width=None, height=None):
    """Resample the object's front into an axis-aligned strip.

    Output row ``j`` samples the source at profile position
    ``j * (rows - 1) / (height - 1)``; output column ``i`` samples
    ``left + (right - left) * i / (width - 1)`` on that row, bilinearly.
    Before interpolating inside a source row the abscissa is clamped to the
    row's in-object pixel span, so background never bleeds in.
    """
    n = len(profile) if profile is not None else 0
    if n == 0:
        raise EmptyProfile("cannot rectify texture without profile rows")
    dw, dh = default_strip_size(profile)
    width = dw if width is None else int(width)
    height = dh if height is None else int(height)
    if width < 2 or height < 2:
        raise ValueError("texture strip must be at least 2x2")
    if profile.y0 < 0 or profile.y0 + n > img.height:
        raise ValueError("profile rows lie outside the image")

    s = np.arange(height) * (n - 1) / (height - 1)
    idx = np.arange(n)
    left = np.interp(s, idx, profile.left)
    right = np.interp(s, idx, profile.right)
    frac = np.arange(width) / (width - 1)
    xs = left[:, None] + (right - left)[:, None] * frac[None, :]

    lo = np.zeros(img.height)
    hi = np.full(img.height, img.width - 1.0)
    rows = profile.y0 + idx
    lo_p = np.clip(np.ceil(profile.left - 1e-9), 0, img.width - 1)
    hi_p = np.clip(np.floor(profile.right + 1e-9), 0, img.width - 1)
    lo[rows] = lo_p
    hi[rows] = np.maximum(hi_p, lo_p)

    src = np.asarray(img.rgb, dtype=np.float64)
    out = _core.sample_rows(src, profile.y0 + s, xs, lo, hi)
    rgb = np.clip(np.rint(out), 0, 255).astype(np.uint8)
    return TextureStrip(RasterImage.from_array(rgb), profile.y0, profile.y0 + n - 1)


def mirror_u(section_point):
    """Horizontal texture coordinate from the lateral position alone.

    Front and back points with the same ``x`` share ``u``, which mirrors the
    visible texture onto the hidden half without a seam.
    """
    return (float(section_point[0]) + 1.0) / 2.0


def assign_uvs(ring_rows, n_rows, section):
    """UVs for a swept mesh: ``K`` per ring, then the top and bottom cap centres."""
    u = (np.asarray(section.points[:, 0], dtype=np.float64) + 1.0) / 2.0
    v = 1.0 - np.asarray(ring_rows, dtype=np.float64) / (n_rows - 1)
    k = len(u)
    uv = np.empty((len(v) * k + 2, 2))
    uv[:-2, 0] = np.tile(u, len(v))
    uv[:-2, 1] = np.repeat(v, k)
    uv[-2] = (0.5, v[0])
    uv[-1] = (0.5, v[-1])
    return np.clip(uv, 0.0, 1.0)
