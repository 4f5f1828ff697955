"""End-to-end reconstruction: mask -> plane -> profile -> smoothing -> mesh + texture."""
from dataclasses import dataclass, field

from .errors import DimensionMismatch
from .profiling import find_top_plane
from .raster import SegmentationSettings, segment_object
from .section import make_circle
from .silhouette import TraceSettings, fill_gaps, trace_profile
from .smoothing import savgol_coefficients, smooth_profile
from .sweepmesh import SweepSettings, sweep
from .texture import rectify_texture


@dataclass(frozen=True)
class ReconstructSettings:
    section: object = None
    sg_window: int = 11
    sg_order: int = 3
    smooth_radius: bool = False
    ring_step: int = 2
    prior: object = None
    segmentation: SegmentationSettings = field(default_factory=SegmentationSettings)
    trace: TraceSettings = field(default_factory=TraceSettings)


@dataclass(frozen=True)
class Reconstruction:
    mask: object
    plane: object
    raw_profile: object
    profile: object
    mesh: object
    texture: object


def reconstruct(img, mask=None, settings=None):
    """Run every stage on one image.

    When ``mask`` is given segmentation is skipped. The camera is assumed to
    look at the object from the front with its extrusion axis vertical in
    the image, so no view-angle correction is applied.
    """
    s = settings or ReconstructSettings()
    kernel = savgol_coefficients(s.sg_window, s.sg_order)
    section = s.section if s.section is not None else make_circle()
    if mask is None:
        mask = segment_object(img, s.prior, s.segmentation)
    elif (mask.width, mask.height) != (img.width, img.height):
        raise DimensionMismatch(
            f"mask is {mask.width}x{mask.height} but image is {img.width}x{img.height}")
    plane = find_top_plane(mask)
    raw = fill_gaps(trace_profile(mask, plane, s.trace))
    profile = smooth_profile(raw, kernel, smooth_radius=s.smooth_radius)
    mesh = sweep(profile, section, SweepSettings(ring_step=s.ring_step))
    strip = rectify_texture(img, profile)
    return Reconstruction(mask, plane, raw, profile, mesh, strip)
