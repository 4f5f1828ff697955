import numpy as np

from sweeprecon.synth import Style


def stripe_boundaries(strip_rgb, style=Style()):
    """Sub-pixel columns where the red channel crosses between stripe colours.

    Returns a (rows, n_boundaries) array, or None for rows where the count
    of crossings differs from ``style.n_stripes - 1``.
    """
    red = strip_rgb[:, :, 0].astype(float)
    thr = (style.foreground[0] + style.accent[0]) / 2.0
    out = []
    for row in red:
        above = row > thr
        idx = np.flatnonzero(above[1:] != above[:-1])
        if idx.size != style.n_stripes - 1:
            out.append(None)
            continue
        a, b = row[idx], row[idx + 1]
        out.append(idx + (thr - a) / (b - a))
    return out


def stripe_column_variance(strip_rgb):
    rows = [r for r in stripe_boundaries(strip_rgb) if r is not None]
    if not rows:
        return np.inf, 0
    return float(np.var(np.array(rows), axis=0).max()), len(rows)


def front_render_error(recon, img, truth_mask):
    """Mean absolute error (in [0, 1]) between a textured front render and the source."""
    from sweeprecon.synth import rasterize_front

    color, covered = rasterize_front(recon.mesh, recon.texture.image, (img.width, img.height))
    sel = covered & truth_mask.bits
    diff = np.abs(color[sel] - img.rgb[sel].astype(float))
    return float(diff.mean() / 255.0), int(sel.sum())
