import numpy as np
import pytest

from helpers import front_render_error, stripe_boundaries, stripe_column_variance
from sweeprecon import reconstruct
from sweeprecon.errors import EmptyProfile
from sweeprecon.raster import RasterImage
from sweeprecon.section import make_circle, make_rectangle, make_triangle
from sweeprecon.silhouette import SilhouetteProfile
from sweeprecon.sweepmesh import sweep
from sweeprecon.synth import Style, render_scene
from sweeprecon.texture import (Material, assign_uvs, default_strip_size, mirror_u,
                                rectify_texture)


def band_image():
    rgb = np.zeros((60, 80, 3), np.uint8)
    for i in range(60):
        rgb[i] = (i * 4, 255 - i * 4, (i // 10) * 40)
    return RasterImage.from_array(rgb)


def test_row_bands_stay_constant_and_ordered():
    img = band_image()
    p = SilhouetteProfile(5, np.linspace(30, 50, 50), np.linspace(20, 8, 50))
    strip = rectify_texture(img, p).image.rgb
    assert np.all(strip == strip[:, :1, :])
    np.testing.assert_array_equal(strip[:, 0, 0], (np.arange(5, 55) * 4))


def test_constant_profile_is_axis_aligned_crop():
    rng = np.random.default_rng(0)
    rgb = rng.integers(0, 256, size=(40, 50, 3), dtype=np.uint8)
    img = RasterImage.from_array(rgb)
    p = SilhouetteProfile.from_edges(4, np.full(30, 10.0), np.full(30, 35.0))
    strip = rectify_texture(img, p)
    assert strip.image.width == 26 and strip.image.height == 30
    np.testing.assert_array_equal(strip.image.rgb, rgb[4:34, 10:36])
    assert np.all(strip.image.pixels[:, :, 3] == 255)
    assert (strip.y_top, strip.y_bottom) == (4, 33)


def test_resampled_crop_is_bilinear():
    rgb = np.tile(np.arange(0, 200, 10, dtype=np.uint8)[None, :, None], (6, 1, 3))
    img = RasterImage.from_array(rgb)
    p = SilhouetteProfile.from_edges(0, np.full(6, 2.0), np.full(6, 6.0))
    strip = rectify_texture(img, p, width=9, height=6).image.rgb[0, :, 0]
    np.testing.assert_array_equal(strip, [20, 25, 30, 35, 40, 45, 50, 55, 60])


def test_background_does_not_bleed():
    rgb = np.zeros((10, 20, 3), np.uint8)
    rgb[:, 5:12] = 200
    img = RasterImage.from_array(rgb)
    p = SilhouetteProfile.from_edges(0, np.full(10, 4.6), np.full(10, 11.4))
    strip = rectify_texture(img, p, width=30).image.rgb
    assert np.all(strip == 200)


def test_default_strip_size():
    p = SilhouetteProfile.from_edges(0, [10, 11, 12], [40, 40, 40])
    assert default_strip_size(p) == (32, 3)
    p = SilhouetteProfile.from_edges(0, [10, 11, 12], [41, 40, 40])
    assert default_strip_size(p) == (32, 3)


def test_empty_profile():
    with pytest.raises(EmptyProfile):
        rectify_texture(band_image(), None)


def test_striped_cone_is_straightened(fixtures):
    img, mask = render_scene(fixtures["cone"], style=Style(pattern="stripes"))
    recon = reconstruct(img, mask)
    # 64 columns keep the strip at or below source resolution for most rows
    strip = rectify_texture(img, recon.profile, width=64).image.rgb
    var, n = stripe_column_variance(strip)
    assert n >= 0.9 * len(recon.profile)
    assert var <= 1.0

    # control: a fixed-column crop of the same rows keeps the stripes slanted
    p = recon.profile
    fixed = SilhouetteProfile(p.y0, p.center, np.full(len(p), p.halfwidth.max()))
    naive = rectify_texture(img, fixed, width=64).image.rgb
    bounds = [r for r in stripe_boundaries(naive) if r is not None]
    assert len(bounds) < 0.5 * len(p) or np.var(np.array(bounds), axis=0).max() > 10


@pytest.mark.parametrize("point, u", [((1, 0), 1.0), ((-1, 0), 0.0), ((0, 1), 0.5),
                                      ((0, -1), 0.5), ((0.5, 0.3), 0.75)])
def test_mirror_u(point, u):
    assert mirror_u(point) == u


@pytest.mark.parametrize("section", [make_circle(32), make_circle(7), make_rectangle(0.3),
                                     make_triangle()])
def test_uvs_mirror_and_range(section):
    p = SilhouetteProfile(0, np.full(21, 40.0), np.linspace(10, 20, 21))
    m = sweep(p, section)
    k = m.ring_size
    assert np.all((m.uvs >= 0) & (m.uvs <= 1))
    ring = m.uvs[:k]
    for i in range(k):
        x, z = section.points[i]
        mirrored = [j for j in range(k) if np.isclose(section.points[j, 0], x)
                    and np.isclose(section.points[j, 1], -z)]
        for j in mirrored:
            assert ring[i, 0] == ring[j, 0]
        assert ring[i, 0] == mirror_u((x, z))
    v = m.uvs[:-2:k, 1]
    assert v[0] == 1.0 and v[-1] == 0.0
    assert np.all(np.diff(v) < 0)
    np.testing.assert_array_equal(m.uvs[-2], [0.5, 1.0])
    np.testing.assert_array_equal(m.uvs[-1], [0.5, 0.0])


def test_assign_uvs_layout():
    uv = assign_uvs([0, 2, 4], 5, make_circle(4))
    assert uv.shape == (14, 2)
    np.testing.assert_array_equal(uv[:4, 0], [1.0, 0.5, 0.0, 0.5])
    np.testing.assert_array_equal(uv[:12:4, 1], [1.0, 0.5, 0.0])


def test_front_render_reproduces_source(fixtures):
    img, mask = render_scene(fixtures["cylinder"], style=Style(pattern="stripes"))
    recon = reconstruct(img, mask)
    mae, n = front_render_error(recon, img, mask)
    assert n >= 0.95 * mask.area
    assert mae <= 8 / 255


def test_material_name():
    Material("vase_1", "vase_texture.png")
    with pytest.raises(ValueError):
        Material("has space", "t.png")
    with pytest.raises(ValueError):
        Material("", "t.png")
