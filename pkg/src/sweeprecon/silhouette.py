"""Row-by-row silhouette tracing from the top plane downward."""
import io
import math
from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import ParseError, ProfileTooShort

# Edge search cone of pi/3 around the vertical, quantised to one-row steps.
CONTINUITY_WINDOW = math.ceil(math.tan(math.pi / 3))

CSV_HEADER = "y,left,right,center,halfwidth"


@dataclass(frozen=True)
class SilhouetteProfile:
    """Object extent on the contiguous rows ``y0, y0+1, ...``.

    Stored as per-row ``center`` and ``halfwidth``; ``left``/``right`` are
    the derived pixel-centre edge columns. ``observed`` is False for rows
    whose edges were not measured (placeholders until :func:`fill_gaps`).
    """

    y0: int
    center: np.ndarray
    halfwidth: np.ndarray
    observed: np.ndarray = None

    def __post_init__(self):
        center = np.array(self.center, dtype=np.float64)
        halfwidth = np.array(self.halfwidth, dtype=np.float64)
        obs = (np.ones(center.shape, dtype=bool) if self.observed is None
               else np.array(self.observed, dtype=bool))
        if not (center.ndim == 1 and center.shape == halfwidth.shape == obs.shape):
            raise ValueError("center, halfwidth and observed must be equal-length 1-D arrays")
        if center.size < 2:
            raise ProfileTooShort(f"profile has {center.size} row(s); at least 2 required")
        if not np.all(np.isfinite(center)) or not np.all(halfwidth > 0):
            raise ValueError("every profile row needs a finite center and left < right")
        for a in (center, halfwidth, obs):
            a.flags.writeable = False
        object.__setattr__(self, "y0", int(self.y0))
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "halfwidth", halfwidth)
        object.__setattr__(self, "observed", obs)

    @classmethod
    def from_edges(cls, y0, left, right, observed=None):
        left = np.asarray(left, dtype=np.float64)
        right = np.asarray(right, dtype=np.float64)
        return cls(y0, (left + right) / 2.0, (right - left) / 2.0, observed)

    def __len__(self):
        return self.center.size

    def __eq__(self, other):
        if not isinstance(other, SilhouetteProfile):
            return NotImplemented
        return (self.y0 == other.y0 and np.array_equal(self.center, other.center)
                and np.array_equal(self.halfwidth, other.halfwidth)
                and np.array_equal(self.observed, other.observed))

    __hash__ = None

    @property
    def rows(self):
        return np.arange(self.y0, self.y0 + len(self))

    @property
    def left(self):
        return self.center - self.halfwidth

    @property
    def right(self):
        return self.center + self.halfwidth

    def to_csv(self):
        buf = io.StringIO()
        buf.write(CSV_HEADER + "\n")
        for y, l, r, c, h in zip(self.rows, self.left, self.right,
                                 self.center, self.halfwidth):
            buf.write(f"{y},{l:.3f},{r:.3f},{c:.3f},{h:.3f}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].strip() != CSV_HEADER:
            raise ParseError(f"expected header '{CSV_HEADER}'", 1)
        ys, left, right = [], [], []
        for n, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != 5:
                raise ParseError("expected 5 fields", n)
            try:
                ys.append(int(parts[0]))
                left.append(float(parts[1]))
                right.append(float(parts[2]))
            except ValueError as exc:
                raise ParseError(str(exc), n) from exc
        if ys and np.any(np.diff(ys) != 1):
            raise ParseError("rows are not contiguous")
        if not ys:
            raise ProfileTooShort("profile CSV has no rows")
        return cls.from_edges(ys[0], left, right)


@dataclass(frozen=True)
class TraceSettings:
    window: int = CONTINUITY_WINDOW
    gap_max: int = 8
    min_width: int = 2


def trace_profile(mask, plane, cfg=None):
    """Follow the object's left and right boundary one row at a time.

    Starting from the top plane, each row picks the foreground run that
    overlaps the previous row's span (the widest, if several do). The run
    is accepted only if both of its ends stay within the continuity window
    of the last accepted edges; the window grows by one step per skipped
    row. Rejected rows become unobserved gaps; more than ``gap_max`` of them
    in a row, or a run narrower than ``min_width``, ends the sweep.

    Raises
    ------
    ProfileTooShort
        If fewer than two rows were traced.
    """
    cfg = cfg or TraceSettings()
    left, right, observed = _core.trace_rows(
        mask.bits, int(plane.y), int(round(plane.left_x)), int(round(plane.right_x)),
        int(cfg.window), int(cfg.gap_max), int(cfg.min_width))
    if left.size < 2:
        raise ProfileTooShort(
            f"silhouette ends after {left.size} row(s) below y={plane.y}")
    return SilhouetteProfile.from_edges(plane.y, left, right, observed.astype(bool))


def fill_gaps(profile):
    """Linearly interpolate the edges of unobserved rows."""
    obs = profile.observed
    if obs.all():
        return profile
    if not (obs[0] and obs[-1]):
        raise ValueError("first and last profile rows must be observed")
    idx = np.arange(len(profile))
    left = np.interp(idx, idx[obs], profile.left[obs])
    right = np.interp(idx, idx[obs], profile.right[obs])
    return SilhouetteProfile.from_edges(profile.y0, left, right)
