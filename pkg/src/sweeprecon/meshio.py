"""Wavefront OBJ/MTL export and a strict reader for the exported subset."""
import os

import numpy as np

from .errors import ParseError
from .sweepmesh import TriangleMesh


def _fmt(x):
    x = round(float(x), 6)
    if x == 0.0:
        x = 0.0  # no "-0.000000"
    return f"{x:.6f}"


def _fmt_row(prefix, row):
    return prefix + " " + " ".join(_fmt(c) for c in row) + "\n"


def obj_text(mesh, material, mtl_name):
    """OBJ body for ``mesh``; every face corner uses ``i/i/i``."""
    if mesh.normals is None or mesh.uvs is None:
        raise ValueError("OBJ export needs per-vertex normals and UVs")
    parts = [f"mtllib {mtl_name}\n", f"usemtl {material.name}\n"]
    parts += [_fmt_row("v", p) for p in mesh.vertices]
    parts += [_fmt_row("vt", p) for p in mesh.uvs]
    parts += [_fmt_row("vn", p) for p in mesh.normals]
    for a, b, c in (mesh.triangles + 1).tolist():
        parts.append(f"f {a}/{a}/{a} {b}/{b}/{b} {c}/{c}/{c}\n")
    return "".join(parts)


def mtl_text(material):
    return (f"newmtl {material.name}\n"
            "Kd 1.000000 1.000000 1.000000\n"
            f"map_Kd {material.diffuse_map}\n")


def write_obj(mesh, material, obj_path, mtl_path):
    """Write ``obj_path`` and ``mtl_path``; the OBJ references the MTL by relative path."""
    obj_dir = os.path.dirname(os.path.abspath(obj_path))
    mtl_ref = os.path.relpath(os.path.abspath(mtl_path), obj_dir).replace(os.sep, "/")
    with open(obj_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(obj_text(mesh, material, mtl_ref))
    with open(mtl_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(mtl_text(material))


def _floats(parts, n, lineno):
    if len(parts) != n:
        raise ParseError(f"expected {n} numbers, got {len(parts)}", lineno)
    try:
        vals = [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from exc
    if not all(np.isfinite(vals)):
        raise ParseError("non-finite number", lineno)
    return vals


def _corner(token, lineno):
    fields = token.split("/")
    if len(fields) != 3 or not all(fields):
        raise ParseError(f"face corner {token!r} is not v/vt/vn", lineno)
    try:
        idx = [int(f) for f in fields]
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from exc
    if any(i <= 0 for i in idx):
        raise ParseError(f"face index in {token!r} must be >= 1", lineno)
    if len(set(idx)) != 1:
        raise ParseError(f"face corner {token!r} mixes vertex/uv/normal indices", lineno)
    return idx[0] - 1


def read_obj(path):
    """Parse an OBJ produced by :func:`write_obj`.

    Only ``mtllib``, ``usemtl``, ``v``, ``vt``, ``vn`` and triangular
    ``f i/i/i`` statements are accepted; anything else is a
    :class:`ParseError` carrying the line number.
    """
    verts, uvs, normals, tris = [], [], [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tag, *rest = line.split()
            if tag == "v":
                verts.append(_floats(rest, 3, lineno))
            elif tag == "vt":
                uvs.append(_floats(rest, 2, lineno))
            elif tag == "vn":
                normals.append(_floats(rest, 3, lineno))
            elif tag == "f":
                if len(rest) != 3:
                    raise ParseError(f"only triangles are supported, got {len(rest)} corners",
                                     lineno)
                tris.append([_corner(tok, lineno) for tok in rest])
            elif tag in ("mtllib", "usemtl"):
                if len(rest) != 1:
                    raise ParseError(f"{tag} takes one argument", lineno)
            else:
                raise ParseError(f"unsupported statement {tag!r}", lineno)
    if not (len(verts) == len(uvs) == len(normals)):
        raise ParseError("v, vt and vn counts differ")
    n = len(verts)
    for f in tris:
        if max(f) >= n:
            raise ParseError(f"face index {max(f) + 1} exceeds vertex count {n}")
    return TriangleMesh(np.array(verts).reshape(-1, 3), np.array(tris, dtype=np.int64),
                        normals=np.array(normals).reshape(-1, 3),
                        uvs=np.array(uvs).reshape(-1, 2))
