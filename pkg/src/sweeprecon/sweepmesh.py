"""Capped sweep surfaces: ring generation, stitching, normals, volume.

Model coordinates: 1 unit = 1 source pixel, ``x`` as in the image,
``y = -image_row`` (up is +y) and ``z`` toward the viewer.
"""
from dataclasses import dataclass, replace

import numpy as np

from .errors import DegenerateRing, ProfileTooShort, ZeroAreaAccumulation
from .texture import assign_uvs


@dataclass(frozen=True)
class TriangleMesh:
    """Indexed triangle mesh with one normal and one UV per vertex.

    ``ring_rows``/``ring_size`` describe the sweep layout when the mesh was
    produced by :func:`sweep`: ring ``r`` occupies vertices
    ``r*ring_size .. (r+1)*ring_size - 1`` and sits on profile row
    ``ring_rows[r]``.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    normals: np.ndarray = None
    uvs: np.ndarray = None
    ring_rows: tuple = None
    ring_size: int = None

    def __post_init__(self):
        v = np.array(self.vertices, dtype=np.float64).reshape(-1, 3)
        t = np.array(self.triangles, dtype=np.int64).reshape(-1, 3)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "triangles", t)
        n = len(v)
        if self.normals is not None:
            object.__setattr__(self, "normals",
                               np.array(self.normals, dtype=np.float64).reshape(n, 3))
        if self.uvs is not None:
            object.__setattr__(self, "uvs", np.array(self.uvs, dtype=np.float64).reshape(n, 2))
        if t.size and (t.min() < 0 or t.max() >= n):
            raise ValueError("triangle index out of range")

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_triangles(self):
        return len(self.triangles)

    def flipped(self):
        """Same surface with every triangle's winding reversed."""
        return replace(self, triangles=self.triangles[:, ::-1].copy())


@dataclass(frozen=True)
class SweepSettings:
    ring_step: int = 2


def ring_indices(n_rows, ring_step):
    """Profile rows that receive a ring: every ``ring_step``-th plus the last."""
    if ring_step < 1:
        raise ValueError("ring_step must be >= 1")
    idx = list(range(0, n_rows, ring_step))
    if idx[-1] != n_rows - 1:
        idx.append(n_rows - 1)
    return idx


def _stitch(n_rings, k):
    """Side and cap triangles, outward-facing for a CCW section."""
    tris = []
    kk = np.arange(k)
    kn = (kk + 1) % k
    for r in range(n_rings - 1):
        p, pn = r * k + kk, r * k + kn
        q, qn = (r + 1) * k + kk, (r + 1) * k + kn
        tris.append(np.column_stack([p, pn, q]))
        tris.append(np.column_stack([pn, qn, q]))
    top, bottom = n_rings * k, n_rings * k + 1
    last = (n_rings - 1) * k
    tris.append(np.column_stack([np.full(k, top), kn, kk]))
    tris.append(np.column_stack([np.full(k, bottom), last + kk, last + kn]))
    return np.concatenate(tris).astype(np.int64)


def sweep(profile, section, cfg=None):
    """Sweep ``section`` along ``profile`` into a closed, UV-mapped mesh.

    Ring vertex ``k`` on profile row ``i`` is
    ``(center_i + halfwidth_i * x_k, -(y0 + i), halfwidth_i * z_k)``.
    Adjacent rings are joined by ``2K`` triangles and both ends are closed
    with fans around the scaled section centroid.

    Raises
    ------
    ProfileTooShort
        Fewer than two profile rows.
    DegenerateRing
        A selected ring has halfwidth below 0.5 px.
    """
    cfg = cfg or SweepSettings()
    n = len(profile)
    if n < 2:
        raise ProfileTooShort("sweep needs at least two profile rows")
    rows = ring_indices(n, cfg.ring_step)
    c = profile.center[rows]
    h = profile.halfwidth[rows]
    if np.any(h < 0.5):
        bad = rows[int(np.argmax(h < 0.5))]
        raise DegenerateRing(f"halfwidth below 0.5 px at image row {profile.y0 + bad}")
    y = -(profile.y0 + np.asarray(rows, dtype=np.float64))

    sx, sz = section.points[:, 0], section.points[:, 1]
    k = len(section)
    ring_x = c[:, None] + h[:, None] * sx[None, :]
    ring_z = h[:, None] * sz[None, :]
    ring_y = np.broadcast_to(y[:, None], ring_x.shape)
    verts = np.stack([ring_x, ring_y, ring_z], axis=-1).reshape(-1, 3)

    cx, cz = section.centroid()
    caps = np.array([[c[0] + h[0] * cx, y[0], h[0] * cz],
                     [c[-1] + h[-1] * cx, y[-1], h[-1] * cz]])
    verts = np.concatenate([verts, caps])

    mesh = TriangleMesh(verts, _stitch(len(rows), k),
                        uvs=assign_uvs(rows, n, section),
                        ring_rows=tuple(rows), ring_size=k)
    return compute_normals(mesh)


def face_normals(mesh):
    """Unnormalised face normals; their length is twice the triangle area."""
    v = mesh.vertices[mesh.triangles]
    return np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])


def compute_normals(mesh):
    """Area-weighted vertex normals over all incident triangles.

    Raises
    ------
    ZeroAreaAccumulation
        A vertex has no incident area (isolated or only degenerate faces).
    """
    fn = face_normals(mesh)
    acc = np.zeros_like(mesh.vertices)
    for j in range(3):
        np.add.at(acc, mesh.triangles[:, j], fn)
    length = np.linalg.norm(acc, axis=1)
    if np.any(length == 0.0):
        raise ZeroAreaAccumulation(
            f"{int(np.sum(length == 0.0))} vertex normal(s) have no incident area")
    return replace(mesh, normals=acc / length[:, None])


def signed_volume(mesh):
    """Enclosed volume via the divergence theorem, positive if outward-oriented."""
    v = mesh.vertices[mesh.triangles]
    return float(np.sum(np.einsum("ij,ij->i", v[:, 0], np.cross(v[:, 1], v[:, 2])))) / 6.0


def edge_use_counts(mesh):
    """Map each undirected edge ``(i, j)``, ``i < j``, to its triangle count."""
    t = mesh.triangles
    e = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
    e.sort(axis=1)
    uniq, counts = np.unique(e, axis=0, return_counts=True)
    return dict(zip(map(tuple, uniq.tolist()), counts.tolist()))


def is_watertight(mesh):
    counts = edge_use_counts(mesh)
    return bool(counts) and all(c == 2 for c in counts.values())


def euler_characteristic(mesh):
    n_edges = len(edge_use_counts(mesh))
    used = np.unique(mesh.triangles).size
    return used - n_edges + mesh.n_triangles


def triangle_areas(mesh):
    return 0.5 * np.linalg.norm(face_normals(mesh), axis=1)


def mesh_problems(mesh, area_tol=1e-9):
    """List the closed-solid invariants ``mesh`` violates (empty when valid)."""
    problems = []
    if not np.all(np.isfinite(mesh.vertices)):
        problems.append("non-finite vertex coordinates")
    if not is_watertight(mesh):
        problems.append("not watertight")
    if euler_characteristic(mesh) != 2:
        problems.append(f"Euler characteristic {euler_characteristic(mesh)} != 2")
    if not signed_volume(mesh) > 0:
        problems.append("non-positive signed volume")
    if np.any(triangle_areas(mesh) <= area_tol):
        problems.append("degenerate triangles")
    return problems
