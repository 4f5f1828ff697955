"""Command-line interface: ``reconstruct``, ``synth`` and ``eval``.

Exit codes: 0 success, 2 segmentation failure, 3 profile/extrusion
failure, 4 I/O or argument error, 5 recovered and truth rows do not overlap.
"""
import argparse
import logging
import os
import re
import sys
from pathlib import Path

from . import errors
from .meshio import write_obj
from .pipeline import ReconstructSettings, reconstruct
from .raster import RectRegion, load_image, load_mask, save_image, save_mask
from .section import load_polygon, make_circle, make_rectangle, make_triangle
from .synth import SHAPES, PATTERNS, Style, TruthProfile, compare_profiles, render_scene, \
    shape_by_name
from .texture import Material

log = logging.getLogger("sweeprecon")

EXIT_OK = 0
EXIT_SEGMENTATION = 2
EXIT_PROFILE = 3
EXIT_USAGE = 4
EXIT_NO_OVERLAP = 5

_LOG_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING, "warning": logging.WARNING,
               "info": logging.INFO, "debug": logging.DEBUG}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_shape(text, sections):
    if text == "circle":
        return make_circle(sections)
    if text == "square":
        return make_rectangle(1.0)
    if text == "triangle":
        return make_triangle()
    if text.startswith("rect:"):
        try:
            ratio = float(text[5:])
        except ValueError:
            raise UsageError(f"--shape {text}: ratio is not a number") from None
        return make_rectangle(ratio)
    if text.startswith("polygon:"):
        return load_polygon(text[8:])
    raise UsageError(f"--shape {text!r}: expected circle, square, rect:<ratio>, "
                     "triangle or polygon:<file>")


def _parse_prior(text):
    try:
        x0, y0, x1, y1 = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--prior {text!r}: expected x0,y0,x1,y1") from None
    try:
        return RectRegion(x0, y0, x1, y1)
    except errors.OutOfBounds as exc:
        raise UsageError(f"--prior: {exc}") from None


def _add_pipeline_flags(p):
    p.add_argument("--input", required=True, help="source image (PNG)")
    p.add_argument("--mask", help="foreground mask PNG; skips segmentation")
    p.add_argument("--shape", default="circle",
                   help="cross-section: circle|square|rect:<ratio>|triangle|polygon:<file>")
    p.add_argument("--sg-window", type=int, default=11)
    p.add_argument("--sg-order", type=int, default=3)
    p.add_argument("--smooth-radius", action="store_true",
                   help="also smooth the halfwidth series")
    p.add_argument("--ring-step", type=int, default=2)
    p.add_argument("--sections", type=int, default=32, help="circle sample count")
    p.add_argument("--prior", default="10,10,512,512", help="object placement x0,y0,x1,y1")
    p.add_argument("--dump-stages", metavar="DIR", help="write intermediate stage files")


def build_parser():
    parser = _Parser(prog="sweeprecon",
                     description="Reconstruct extruded objects from a single front view.")
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("reconstruct", help="image -> textured OBJ")
    _add_pipeline_flags(rec)
    rec.add_argument("--out", required=True, help="output OBJ path")

    syn = sub.add_parser("synth", help="render a synthetic fixture")
    syn.add_argument("--shape", required=True, choices=SHAPES)
    syn.add_argument("--out", required=True, help="output PNG")
    syn.add_argument("--truth", required=True, help="output truth CSV")
    syn.add_argument("--noise", type=int, default=0)
    syn.add_argument("--pattern", default="flat", choices=PATTERNS)
    syn.add_argument("--seed", type=int, default=0)

    ev = sub.add_parser("eval", help="score a reconstruction against a truth CSV")
    _add_pipeline_flags(ev)
    ev.add_argument("--truth", required=True, help="truth CSV from 'synth'")
    ev.add_argument("--out", help="optionally also write the OBJ")
    return parser


def _settings(args):
    if args.sg_window < 3 or args.sg_window % 2 == 0:
        raise UsageError(f"--sg-window must be an odd integer >= 3, got {args.sg_window}")
    if not 0 <= args.sg_order < args.sg_window:
        raise UsageError(f"--sg-order must satisfy 0 <= order < --sg-window, got {args.sg_order}")
    if args.ring_step < 1:
        raise UsageError(f"--ring-step must be >= 1, got {args.ring_step}")
    if args.sections < 3:
        raise UsageError(f"--sections must be >= 3, got {args.sections}")
    return ReconstructSettings(
        section=_parse_shape(args.shape, args.sections),
        sg_window=args.sg_window, sg_order=args.sg_order,
        smooth_radius=args.smooth_radius, ring_step=args.ring_step,
        prior=_parse_prior(args.prior))


def _run_pipeline(args):
    settings = _settings(args)
    img = load_image(args.input)
    prior = settings.prior.clipped(img.width, img.height)
    if not prior.fits(img.width, img.height) or prior.x0 >= prior.x1 or prior.y0 >= prior.y1:
        raise UsageError(f"--prior {args.prior} lies outside the {img.width}x{img.height} image")
    settings = ReconstructSettings(**{**settings.__dict__, "prior": prior})
    mask = load_mask(args.mask, (img.width, img.height)) if args.mask else None
    result = reconstruct(img, mask, settings)
    log.info("traced %d rows from y=%d", len(result.profile), result.profile.y0)
    if args.dump_stages:
        _dump_stages(Path(args.dump_stages), result)
    if args.out:
        _write_outputs(Path(args.out), result)
    return result


def _dump_stages(d, result):
    d.mkdir(parents=True, exist_ok=True)
    save_mask(result.mask, d / "mask.png")
    (d / "plane.csv").write_text(result.plane.to_csv(), encoding="utf-8")
    (d / "profile_raw.csv").write_text(result.raw_profile.to_csv(), encoding="utf-8")
    (d / "profile_smooth.csv").write_text(result.profile.to_csv(), encoding="utf-8")


def _write_outputs(obj_path, result):
    obj_path.parent.mkdir(parents=True, exist_ok=True)
    stem = obj_path.stem
    tex_path = obj_path.with_name(stem + "_texture.png")
    mtl_path = obj_path.with_suffix(".mtl")
    name = re.sub(r"\s+", "_", stem) or "material"
    save_image(result.texture.image, tex_path)
    write_obj(result.mesh, Material(name, tex_path.name), obj_path, mtl_path)


def cmd_reconstruct(args):
    _run_pipeline(args)
    return EXIT_OK


def cmd_synth(args):
    if not 0 <= args.noise <= 8:
        raise UsageError(f"--noise must lie in 0..8, got {args.noise}")
    truth = shape_by_name(args.shape)
    img, mask = render_scene(truth, style=Style(pattern=args.pattern),
                             noise=args.noise, seed=args.seed)
    out = Path(args.out)
    save_image(img, out)
    save_mask(mask, out.with_name(out.stem + ".mask.png"))
    Path(args.truth).write_text(truth.to_csv(), encoding="utf-8")
    return EXIT_OK


def cmd_eval(args):
    try:
        truth = TruthProfile.from_csv(Path(args.truth).read_text(encoding="utf-8"))
    except errors.ParseError as exc:
        raise UsageError(f"--truth {args.truth}: {exc}") from None
    result = _run_pipeline(args)
    print(compare_profiles(result.profile, truth).report())
    return EXIT_OK


def _configure_logging():
    level = _LOG_LEVELS.get(os.environ.get("LOG_LEVEL", "warn").lower(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="sweeprecon: %(levelname)s: %(message)s")


def main(argv=None):
    _configure_logging()
    commands = {"reconstruct": cmd_reconstruct, "synth": cmd_synth, "eval": cmd_eval}
    try:
        args = build_parser().parse_args(argv)
        return commands[args.command](args)
    except errors.EmptyMask as exc:
        code, msg = EXIT_SEGMENTATION, f"segmentation failed: {exc}"
    except (errors.ProfileTooShort, errors.DegenerateRing,
            errors.ZeroAreaAccumulation) as exc:
        code, msg = EXIT_PROFILE, f"extrusion failed: {exc}"
    except errors.NoOverlap as exc:
        code, msg = EXIT_NO_OVERLAP, f"no overlap with truth: {exc}"
    except UsageError as exc:
        code, msg = EXIT_USAGE, str(exc)
    except (errors.ReconstructionError, OSError, ValueError) as exc:
        code, msg = EXIT_USAGE, str(exc)
    print(f"sweeprecon: error: {msg}", file=sys.stderr)
    return code
