"""Time the compiled kernels against the pure-Python fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat N]

Inputs are the 512x512 synthetic fixtures: the noisy vase render for
labelling, its mask for tracing, and a 512-wide strip for sampling.
"""
import argparse
import timeit

import numpy as np

from sweeprecon import _core
from sweeprecon.profiling import find_top_plane
from sweeprecon.raster import background_distance
from sweeprecon.synth import render_scene, shape_by_name


def workloads():
    img, mask = render_scene(shape_by_name("vase"), noise=8)
    sample = np.zeros((512, 512), dtype=bool)
    sample[:4] = sample[-4:] = True
    sample[:, :4] = sample[:, -4:] = True
    # raw threshold output, speckled by noise: a realistic labelling input
    speckle = background_distance(img.rgb, sample, 4.0) > 2.0
    plane = find_top_plane(mask)
    src = np.asarray(img.rgb, dtype=np.float64)
    ys = np.linspace(100, 400, 301)
    xs = np.tile(np.linspace(180.0, 330.0, 512), (301, 1))
    lo = np.full(512, 180.0)
    hi = np.full(512, 330.0)
    return {
        "label4": lambda k: k.label4(speckle),
        "trace_rows": lambda k: k.trace_rows(mask.bits, plane.y, int(plane.left_x),
                                             int(plane.right_x), 2, 8, 2),
        "sample_rows": lambda k: k.sample_rows(src, ys, xs, lo, hi),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if "cython" not in _core.BACKENDS:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<12} " + " ".join(f"{b:>12}" for b in sorted(_core.BACKENDS)) + "   speedup")
    for name, fn in workloads().items():
        times = {}
        for b, impl in sorted(_core.BACKENDS.items()):
            times[b] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        cols = " ".join(f"{times[b] * 1e3:>10.2f}ms" for b in sorted(times))
        speed = f"{times['python'] / times['cython']:8.1f}x" if "cython" in times else ""
        print(f"{name:<12} {cols} {speed}")


if __name__ == "__main__":
    main()
