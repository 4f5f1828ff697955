import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from conftest import rect_mask
from sweeprecon.errors import ProfileTooShort
from sweeprecon.profiling import find_top_plane
from sweeprecon.raster import BinaryMask
from sweeprecon.silhouette import (CONTINUITY_WINDOW, SilhouetteProfile, TraceSettings,
                                   fill_gaps, trace_profile)
from sweeprecon.synth import compare_profiles, render_scene, TruthProfile


def trace(mask, cfg=None):
    return trace_profile(mask, find_top_plane(mask), cfg)


def test_window_is_pi_over_3_cone():
    assert CONTINUITY_WINDOW == 2


def test_rectangle_profile_is_exact():
    p = trace(rect_mask())
    assert len(p) == 91 and p.y0 == 10
    assert np.all(p.left == 20) and np.all(p.right == 80)
    assert np.all(p.center == 50) and np.all(p.halfwidth == 30)
    assert p.observed.all()


def test_cone_halfwidth_linear(fixtures, renders):
    p = fill_gaps(trace(renders["cone"][1]))
    m = compare_profiles(p, fixtures["cone"])
    assert m.rmse_halfwidth <= 1.0
    assert m.row_coverage == 1.0


def test_occluded_rows_become_gaps_then_interpolate():
    base = rect_mask()
    bits = base.bits.copy()
    bits[50:53] = False
    p = trace(BinaryMask.from_array(bits))
    assert len(p) == 91
    np.testing.assert_array_equal(np.flatnonzero(~p.observed) + p.y0, [50, 51, 52])
    filled = fill_gaps(p)
    ref = trace(base)
    np.testing.assert_array_equal(filled.left, ref.left)
    np.testing.assert_array_equal(filled.right, ref.right)
    assert filled.observed.all()


def test_long_gap_terminates():
    bits = rect_mask().bits.copy()
    bits[50:59] = False  # 9 rows > gap_max
    p = trace(BinaryMask.from_array(bits))
    assert p.y0 + len(p) - 1 == 49


def test_jump_outside_window_is_unobserved():
    bits = rect_mask().bits.copy()
    bits[60, 20:23] = False  # left edge jumps by 3 px on one row
    p = trace(BinaryMask.from_array(bits))
    assert not p.observed[60 - p.y0]
    assert p.observed[61 - p.y0]


def test_narrow_row_terminates():
    bits = np.zeros((40, 40), bool)
    bits[5:20, 10:20] = True
    bits[20:30, 14:16] = True  # 2 px wide => right - left = 1 < min_width
    p = trace(BinaryMask.from_array(bits), TraceSettings(window=10))
    assert p.y0 + len(p) - 1 == 19


def test_run_choice_follows_previous_span():
    bits = np.zeros((30, 60), bool)
    bits[5:25, 20:30] = True
    bits[10:25, 40:58] = True  # wider but disjoint run
    p = trace(BinaryMask.from_array(bits))
    assert np.all(p.left == 20) and np.all(p.right == 29)


def test_single_row_is_too_short():
    bits = np.zeros((20, 20), bool)
    bits[5, 3:15] = True
    with pytest.raises(ProfileTooShort):
        trace(BinaryMask.from_array(bits))


def test_fill_gaps_midpoint_and_linear():
    p = SilhouetteProfile.from_edges(0, [20, 0, 22], [40, 40, 40], [True, False, True])
    assert fill_gaps(p).left[1] == 21
    p = SilhouetteProfile.from_edges(0, [10, 0, 0, 0, 18], [30] * 5,
                                     [True, False, False, False, True])
    np.testing.assert_array_equal(fill_gaps(p).left, [10, 12, 14, 16, 18])


def test_fill_gaps_identity_without_gaps():
    p = trace(rect_mask())
    assert fill_gaps(p) is p


def test_horizontal_erosion_shrinks_halfwidth_by_one(fixtures, renders):
    mask = renders["vase"][1]
    b = mask.bits
    eroded = b & np.roll(b, 1, axis=1) & np.roll(b, -1, axis=1)
    p0 = trace(mask)
    p1 = trace(BinaryMask.from_array(eroded))
    n = min(len(p0), len(p1))
    np.testing.assert_array_equal(p0.halfwidth[1:n - 1] - p1.halfwidth[1:n - 1], 1.0)


def test_profile_csv_round_trip():
    p = SilhouetteProfile.from_edges(7, [1.5, 2.25], [10.0, 11.125])
    text = p.to_csv()
    assert text.splitlines()[0] == "y,left,right,center,halfwidth"
    assert text.splitlines()[1] == "7,1.500,10.000,5.750,4.250"
    back = SilhouetteProfile.from_csv(text)
    np.testing.assert_allclose(back.left, p.left, atol=1e-3)
    np.testing.assert_allclose(back.right, p.right, atol=1e-3)


@st.composite
def blobby_masks(draw):
    h = draw(st.integers(8, 40))
    w = draw(st.integers(8, 40))
    bits = draw(arrays(np.bool_, (h, w)))
    bits[h // 4: 3 * h // 4, w // 4: 3 * w // 4] = True
    return bits


@given(blobby_masks())
@settings(max_examples=150, deadline=None)
def test_continuity_and_contiguity(bits):
    mask = BinaryMask.from_array(bits)
    try:
        p = trace(mask)
    except ProfileTooShort:
        return
    assert np.all(p.left < p.right)
    obs = np.flatnonzero(p.observed)
    assert p.observed[0] and p.observed[-1]
    for a, b in zip(obs[:-1], obs[1:]):
        step = CONTINUITY_WINDOW * (b - a)
        assert abs(p.left[b] - p.left[a]) <= step
        assert abs(p.right[b] - p.right[a]) <= step
    for i in obs:
        row = bits[p.y0 + i]
        l, r = int(p.left[i]), int(p.right[i])
        assert row[l:r + 1].all()
        assert (l == 0 or not row[l - 1]) and (r == bits.shape[1] - 1 or not row[r + 1])
    assert trace(mask) == p
