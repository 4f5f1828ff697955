"""Images, binary masks, PNG I/O and background-model segmentation."""
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import _core
from .errors import DecodeError, DimensionMismatch, EmptyMask, OutOfBounds


@dataclass(frozen=True)
class RasterImage:
    """RGBA image, 8 bits per channel, row-major with origin at the top-left.

    ``pixels`` has shape ``(height, width, 4)``; pixel ``(x, y)`` lives at
    flat index ``y * width + x``.
    """

    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        px = np.array(self.pixels, dtype=np.uint8, order="C")
        if px.shape != (self.height, self.width, 4):
            raise DimensionMismatch(
                f"pixel array {px.shape} does not match {self.width}x{self.height} RGBA")
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_array(cls, arr):
        """Build from an (H, W), (H, W, 3) or (H, W, 4) uint8 array."""
        arr = np.asarray(arr, dtype=np.uint8)
        if arr.ndim == 2:
            arr = np.repeat(arr[:, :, None], 3, axis=2)
        if arr.shape[2] == 3:
            alpha = np.full(arr.shape[:2] + (1,), 255, dtype=np.uint8)
            arr = np.concatenate([arr, alpha], axis=2)
        return cls(arr.shape[1], arr.shape[0], arr)

    @property
    def rgb(self):
        return self.pixels[:, :, :3]


@dataclass(frozen=True)
class BinaryMask:
    """One boolean per pixel, ``True`` for foreground. ``bits`` is (H, W)."""

    width: int
    height: int
    bits: np.ndarray

    def __post_init__(self):
        b = np.array(self.bits, dtype=bool, order="C")
        if b.shape != (self.height, self.width):
            raise DimensionMismatch(
                f"mask array {b.shape} does not match {self.width}x{self.height}")
        b.flags.writeable = False
        object.__setattr__(self, "bits", b)

    @classmethod
    def from_array(cls, bits):
        bits = np.asarray(bits, dtype=bool)
        return cls(bits.shape[1], bits.shape[0], bits)

    @property
    def area(self):
        return int(np.count_nonzero(self.bits))

    def __eq__(self, other):
        if not isinstance(other, BinaryMask):
            return NotImplemented
        return (self.width, self.height) == (other.width, other.height) and \
            bool(np.array_equal(self.bits, other.bits))

    __hash__ = None


@dataclass(frozen=True)
class RectRegion:
    """Pixel rectangle, ``x0``/``y0`` inclusive and ``x1``/``y1`` exclusive."""

    x0: int
    y0: int
    x1: int
    y1: int

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise OutOfBounds(f"empty rectangle {self}")

    def fits(self, width, height):
        return 0 <= self.x0 < self.x1 <= width and 0 <= self.y0 < self.y1 <= height

    def clipped(self, width, height):
        return RectRegion(max(self.x0, 0), max(self.y0, 0),
                          min(self.x1, width), min(self.y1, height))

    def as_slices(self):
        return slice(self.y0, self.y1), slice(self.x0, self.x1)


def default_prior(width, height):
    """Placement prior for the object, (10, 10)-(512, 512) clipped to the image."""
    return RectRegion(10, 10, 512, 512).clipped(width, height)


@dataclass(frozen=True)
class SegmentationSettings:
    """Tunables for :func:`segment_object`.

    ``tau`` is the threshold on the per-channel variance-normalised squared
    distance from the background mean; variances are floored at
    ``var_floor``. ``border`` is the width of the image border band that is
    always treated as background sample.
    """

    tau: float = 12.0
    var_floor: float = 4.0
    border: int = 4
    min_area: int = 100
    closing: bool = True


def load_image(path):
    """Decode an image file into RGBA; missing alpha becomes 255."""
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode in ("I;16", "I;16B", "I", "F"):
                raise DecodeError(f"{path}: unsupported pixel mode {im.mode}")
            rgba = np.asarray(im.convert("RGBA"), dtype=np.uint8)
    except DecodeError:
        raise
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise DecodeError(f"cannot decode image {path}: {exc}") from exc
    return RasterImage(rgba.shape[1], rgba.shape[0], rgba)


def save_image(img, path):
    Image.fromarray(np.asarray(img.pixels), mode="RGBA").save(path, format="PNG")


def load_mask(path, expected=None):
    """Read a mask image; a pixel is foreground iff its luminance exceeds 127.

    Parameters
    ----------
    path : path-like
        Grayscale or colour image file.
    expected : (width, height), optional
        Required dimensions; :class:`DimensionMismatch` otherwise.
    """
    try:
        with Image.open(path) as im:
            im.load()
            lum = np.asarray(im.convert("L"), dtype=np.uint8)
    except (OSError, UnidentifiedImageError, ValueError) as exc:
        raise DecodeError(f"cannot decode mask {path}: {exc}") from exc
    if expected is not None and (lum.shape[1], lum.shape[0]) != tuple(expected):
        raise DimensionMismatch(
            f"mask {path} is {lum.shape[1]}x{lum.shape[0]}, expected "
            f"{expected[0]}x{expected[1]}")
    return BinaryMask(lum.shape[1], lum.shape[0], lum > 127)


def save_mask(mask, path):
    """Write an 8-bit grayscale PNG with 255 for foreground and 0 elsewhere."""
    data = np.where(mask.bits, 255, 0).astype(np.uint8)
    Image.fromarray(data, mode="L").save(path, format="PNG")


def _dilate3(bits):
    p = np.pad(bits, 1, constant_values=False)
    h, w = bits.shape
    out = np.zeros_like(bits)
    for dy in range(3):
        for dx in range(3):
            out |= p[dy:dy + h, dx:dx + w]
    return out


def _erode3(bits):
    p = np.pad(bits, 1, constant_values=True)
    h, w = bits.shape
    out = np.ones_like(bits)
    for dy in range(3):
        for dx in range(3):
            out &= p[dy:dy + h, dx:dx + w]
    return out


def binary_closing3(bits):
    """One pass of 3x3 closing; never removes an input pixel."""
    bits = np.asarray(bits, dtype=bool)
    return _erode3(_dilate3(bits)) | bits


def label_components(bits):
    """4-connected component labels (1..n, raster order) and their count."""
    return _core.label4(np.asarray(bits, dtype=bool))


def largest_component(bits):
    """Keep only the largest 4-connected component; ties go to the first in raster order."""
    labels, n = label_components(bits)
    if n == 0:
        return np.zeros_like(bits, dtype=bool)
    sizes = np.bincount(labels.ravel(), minlength=n + 1)
    sizes[0] = 0
    return labels == int(np.argmax(sizes))


def background_distance(rgb, sample, var_floor):
    """Per-pixel squared distance to the background colour model.

    The model is the per-channel mean and variance (floored) of ``rgb``
    where ``sample`` is true.
    """
    px = rgb.astype(np.float64)
    bg = px[sample]
    mean = bg.mean(axis=0)
    var = np.maximum(bg.var(axis=0), var_floor)
    return (((px - mean) ** 2) / var).sum(axis=2)


def segment_object(img, prior=None, cfg=None):
    """Separate the object from a roughly uniform background.

    Pixels outside the prior rectangle and inside a thin image border form
    the background colour sample. Pixels inside the prior whose normalised
    distance to that model exceeds ``cfg.tau`` are candidates; the largest
    4-connected candidate region is closed with a 3x3 element and returned.

    Raises
    ------
    EmptyMask
        If no component of at least ``cfg.min_area`` pixels exists.
    """
    cfg = cfg or SegmentationSettings()
    if prior is None:
        prior = default_prior(img.width, img.height)
    if not prior.fits(img.width, img.height):
        raise OutOfBounds(f"prior {prior} outside {img.width}x{img.height} image")

    inside = np.zeros((img.height, img.width), dtype=bool)
    inside[prior.as_slices()] = True
    sample = ~inside
    b = cfg.border
    if b > 0:
        sample[:b, :] = sample[-b:, :] = True
        sample[:, :b] = sample[:, -b:] = True
    if not sample.any():
        raise EmptyMask("no background pixels available to model the background")

    fg = (background_distance(img.rgb, sample, cfg.var_floor) > cfg.tau) & inside
    comp = largest_component(fg)
    if np.count_nonzero(comp) < cfg.min_area:
        raise EmptyMask("no foreground object found inside the placement prior")
    if cfg.closing:
        comp = largest_component(binary_closing3(comp) & inside)
    return BinaryMask(img.width, img.height, comp)


def iou(a, b):
    """Intersection over union of two masks (1.0 when both are empty)."""
    a = a.bits if isinstance(a, BinaryMask) else np.asarray(a, dtype=bool)
    b = b.bits if isinstance(b, BinaryMask) else np.asarray(b, dtype=bool)
    union = np.count_nonzero(a | b)
    if union == 0:
        return 1.0
    return np.count_nonzero(a & b) / union
