"""Triangle mesh of the road surface."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

_MIN_AREA = 1e-9


@dataclass(eq=False)
class RoadMesh:
    """Indexed triangles tagged by region.

    ``regions`` lists (name, first face, end face); faces are counter-clockwise
    seen from +z. ``uv`` is aligned with ``vertices`` when present.
    """

    vertices: np.ndarray
    faces: np.ndarray
    regions: list
    uv: np.ndarray = None
    seams: list = field(default_factory=list)  # per Link-Intersection seam: vertex indices

    def region_faces(self, name):
        for n, a, b in self.regions:
            if n == name:
                return self.faces[a:b]
        raise KeyError(name)

    def triangle_areas(self):
        p = self.vertices[self.faces]
        e1 = p[:, 1, :2] - p[:, 0, :2]
        e2 = p[:, 2, :2] - p[:, 0, :2]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


class _VertexPool:
    """Vertices deduplicated by exact coordinates, in first-use order."""

    def __init__(self):
        self.index = {}
        self.coords = []

    def add(self, p):
        key = (float(p[0]), float(p[1]), float(p[2]))
        j = self.index.get(key)
        if j is None:
            j = len(self.coords)
            self.index[key] = j
            self.coords.append(key)
        return j


def _orient(pool, tri):
    a, b, c = (np.array(pool.coords[j]) for j in tri)
    area = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    if abs(area) <= _MIN_AREA or len(set(tri)) < 3:
        return None
    return tri if area > 0 else (tri[0], tri[2], tri[1])


def strip_triangles(row_a, row_b):
    """Two triangles per quad between index rows of equal length."""
    tris = []
    for j in range(len(row_a) - 1):
        tris.append((row_a[j], row_a[j + 1], row_b[j + 1]))
        tris.append((row_a[j], row_b[j + 1], row_b[j]))
    return tris


def fan_triangulate(center, ring):
    """Fan triangles (center, ring[j], ring[j+1]) around a closed ring."""
    n = len(ring)
    return [(center, ring[j], ring[(j + 1) % n]) for j in range(n)]


def build_mesh(net, profiles, intersection_elevations, mesh_step=2.0, georef=None):
    """Link strips between seg axis and boundary, Intersection fans at constant z."""
    pool = _VertexPool()
    faces, regions = [], []

    def emit(name, tris):
        start = len(faces)
        for t in tris:
            t = _orient(pool, t)
            if t is not None:
                faces.append(t)
        regions.append((name, start, len(faces)))

    for link in net.links:
        sa = net.seg_axes[link.seg_axis_id]
        curve = sa.curve
        n = max(1, int(math.ceil(curve.length / mesh_step - 1e-9)))
        s = np.linspace(0.0, curve.length, n + 1)
        axis = curve.position(s)
        tan = curve.tangent(s)
        nrm = np.stack([-tan[:, 1], tan[:, 0]], axis=1)
        edge = axis + link.half_width_sign * 0.5 * sa.width * nrm
        # seam rows use the exact cut points shared with the Intersection
        axis[0], axis[-1] = sa.geometry.points[0], sa.geometry.points[-1]
        edge[0], edge[-1] = link.boundary.points[0], link.boundary.points[-1]
        z = np.asarray(profiles[sa.id](s), dtype=float) if profiles is not None else np.zeros_like(s)
        ra = [pool.add((*axis[j], z[j])) for j in range(len(s))]
        rb = [pool.add((*edge[j], z[j])) for j in range(len(s))]
        emit(f"link_{link.id}", strip_triangles(ra, rb))

    seams = []
    for b in net.intersections:
        z = intersection_elevations[b.id].z if intersection_elevations is not None else 0.0
        ring = []
        for pv, mid, mv in b.seams:
            idx = [pool.add((*p, z)) for p in (pv, mid, mv)]
            seams.append(idx)
            ring += idx
        # drop repeats where neighbouring arms share a corner
        ring = [v for j, v in enumerate(ring) if v != ring[j - 1]] if len(ring) > 1 else ring
        c = b.polygon.mean(axis=0)
        center = pool.add((c[0], c[1], z))
        emit(f"intersection_{b.id}", fan_triangulate(center, ring))

    verts = np.array(pool.coords, dtype=float).reshape(-1, 3)
    uv = None
    if georef is not None:
        x0, y0, w, h = georef
        uv = np.column_stack([(verts[:, 0] - x0) / w, (verts[:, 1] - y0) / h])
    return RoadMesh(verts, np.array(faces, dtype=np.int64).reshape(-1, 3), regions, uv, seams)
