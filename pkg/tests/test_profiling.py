import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import rect_mask
from sweeprecon.errors import EmptyMask, InvalidAxes
from sweeprecon.profiling import PlaneSegment, estimate_view_angle, find_top_plane
from sweeprecon.raster import BinaryMask


def test_rectangle_top_plane():
    assert find_top_plane(rect_mask()) == PlaneSegment(10, 20.0, 80.0)


def test_disc_apex():
    yy, xx = np.mgrid[:512, :512]
    disc = BinaryMask.from_array((xx - 256) ** 2 + (yy - 256) ** 2 <= 100 ** 2)
    p = find_top_plane(disc)
    assert p.y == 156
    assert p.right_x - p.left_x + 1 <= 3
    assert abs(p.left_x - 256) <= 1.5 and abs(p.right_x - 256) <= 1.5


def test_longest_run_wins_then_leftmost():
    bits = np.zeros((5, 30), bool)
    bits[1, 2:4] = True
    bits[1, 10:20] = True
    bits[1, 22:25] = True
    bits[2:, 5:25] = True
    assert find_top_plane(BinaryMask.from_array(bits)) == PlaneSegment(1, 10.0, 19.0)
    bits[1, :] = False
    bits[1, 0:3] = True
    bits[1, 6:9] = True
    assert find_top_plane(BinaryMask.from_array(bits)) == PlaneSegment(1, 0.0, 2.0)


def test_vase_top_row_matches_truth(fixtures, renders):
    t = fixtures["vase"]
    p = find_top_plane(renders["vase"][1])
    assert p.y == t.y0
    assert abs(p.left_x - (t.center[0] - t.halfwidth[0])) <= 1.0
    assert abs(p.right_x - (t.center[0] + t.halfwidth[0])) <= 1.0


def test_empty_mask():
    with pytest.raises(EmptyMask):
        find_top_plane(BinaryMask.from_array(np.zeros((4, 4), bool)))


def test_plane_csv_line():
    p = PlaneSegment(10, 20.0, 80.5)
    assert p.to_csv() == "10,20.000,80.500\n"
    assert PlaneSegment.from_csv(p.to_csv()) == p


@pytest.mark.parametrize("minor, major, theta", [
    (0.0, 50.0, 0.0),
    (50.0, 50.0, math.pi / 4),
    (25.0, 50.0, 0.4636476090008061),  # atan(0.5)
])
def test_view_angle_values(minor, major, theta):
    assert estimate_view_angle(minor, major).theta == pytest.approx(theta, abs=1e-12)


@pytest.mark.parametrize("minor, major", [(1.0, 0.0), (1.0, -2.0), (3.0, 2.0), (-1.0, 2.0)])
def test_view_angle_invalid(minor, major):
    with pytest.raises(InvalidAxes):
        estimate_view_angle(minor, major)


@given(st.floats(0.1, 1000.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_view_angle_monotone_and_bounded(major, f1, f2):
    a, b = sorted((f1, f2))
    ta = estimate_view_angle(a * major, major).theta
    tb = estimate_view_angle(b * major, major).theta
    assert 0.0 <= ta <= tb < math.pi / 2


def test_pipeline_never_reads_view_angle(monkeypatch, renders):
    import sweeprecon.profiling as profiling
    from sweeprecon import reconstruct

    def boom(*a, **k):
        raise AssertionError("view angle consulted")

    monkeypatch.setattr(profiling, "estimate_view_angle", boom)
    img, mask = renders["cone"]
    reconstruct(img, mask)
    reconstruct(img)
