"""Design-speed geometry, centerline smoothing and tangency-point clustering."""

from dataclasses import replace

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.spatial import cKDTree

from ..errors import DegenerateAxis, DegeneratePolyline, InvalidParams
from ..geom.curves import ParamCurve, Polyline
from .types import CenterlineSet


def fillet_radius(v, u, i):
    """Minimum curve radius (m) for design speed ``v`` (km/h): v^2 / (127 (u + i))."""
    if u + i <= 0:
        raise InvalidParams(f"u + i must be positive, got {u + i}")
    if v < 0:
        raise InvalidParams(f"design speed must be >= 0, got {v}")
    return v * v / (127.0 * (u + i))


def smooth_centerlines(raw, spacing=2.0):
    """Replace every axis by its interpolating spline resampled every ``spacing`` meters.

    Endpoints are copied bit for bit so roads sharing a junction stay joined.
    """
    roads = []
    for road in raw.roads:
        pts = road.axis.points
        if np.hypot(*np.diff(pts, axis=0).T).sum() <= 1e-9:
            raise DegenerateAxis("axis has zero length", road.id)
        try:
            curve = ParamCurve(road.axis)
        except DegeneratePolyline as exc:
            raise DegenerateAxis(str(exc), road.id) from exc
        n = max(1, int(np.ceil(curve.length / spacing - 1e-9)))
        out = curve.position(np.linspace(0.0, curve.length, n + 1))
        out[0] = pts[0]
        out[-1] = pts[-1]
        roads.append(replace(road, axis=Polyline.cleaned(out)))
    return CenterlineSet(roads, u=raw.u, i=raw.i, l_dis=raw.l_dis)


def cluster_intersection_points(points, l_dis, pairs=None, groups=()):
    """Partition tangency points into intersection point sets.

    Points closer than ``l_dis`` are chained together (transitively). Each
    fillet contributes an atomic pair (default: consecutive points ``2j``,
    ``2j + 1``); ``groups`` lists extra index sets that must stay together.
    Components without any pair are dropped. Returns sorted index lists.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    if pairs is None:
        pairs = [(2 * j, 2 * j + 1) for j in range(n // 2)]
    ds = DisjointSet(range(n))
    paired = set()
    for a, b in pairs:
        ds.merge(a, b)
        paired.update((a, b))
    for g in groups:
        g = list(g)
        for b in g[1:]:
            ds.merge(g[0], b)
    if n > 1:
        for a, b in cKDTree(pts).query_pairs(l_dis):
            if np.hypot(*(pts[a] - pts[b])) < l_dis:
                ds.merge(a, b)
    out = [sorted(s) for s in ds.subsets() if paired.intersection(s)]
    return sorted(out, key=lambda s: s[0])
