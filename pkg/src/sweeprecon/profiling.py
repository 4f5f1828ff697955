"""Top extrusion plane detection and the view-angle estimate."""
import math
from dataclasses import dataclass

import numpy as np

from ._core import row_runs
from .errors import EmptyMask, InvalidAxes


@dataclass(frozen=True)
class PlaneSegment:
    """Top cross-section seen edge-on: one image row and its run endpoints.

    ``left_x``/``right_x`` are pixel-centre columns of the run's first and
    last pixel.
    """

    y: int
    left_x: float
    right_x: float

    def to_csv(self):
        return f"{self.y},{self.left_x:.3f},{self.right_x:.3f}\n"

    @classmethod
    def from_csv(cls, text):
        y, left, right = (s.strip() for s in text.strip().split(","))
        return cls(int(y), float(left), float(right))


@dataclass(frozen=True)
class ViewAngle:
    theta: float


def find_top_plane(mask):
    """Locate the topmost foreground row and its longest run.

    Ties between equally long runs go to the leftmost one.

    Raises
    ------
    EmptyMask
        If the mask has no foreground pixel.
    """
    rows = np.flatnonzero(mask.bits.any(axis=1))
    if rows.size == 0:
        raise EmptyMask("mask has no foreground pixels")
    y = int(rows[0])
    starts, ends = row_runs(mask.bits[y])
    k = int(np.argmax(ends - starts))
    return PlaneSegment(y, float(starts[k]), float(ends[k]))


def estimate_view_angle(minor_semi_axis, major_semi_axis):
    """Camera elevation from the projected ellipse of a circular section.

    ``tan(theta) = minor / major``; a front view (theta = 0) projects the
    section to a line. The reconstruction path does not consume this value.
    """
    if not major_semi_axis > 0:
        raise InvalidAxes("major semi-axis must be positive")
    if minor_semi_axis < 0 or minor_semi_axis > major_semi_axis:
        raise InvalidAxes("minor semi-axis must lie in [0, major]")
    return ViewAngle(math.atan(minor_semi_axis / major_semi_axis))
