"""Construction of Links and Intersections from smoothed centerlines.

The steps follow the usual junction recipe: offset the axes by half the road
width, put a design-speed fillet into every corner between neighbouring
roads, group the tangency points into intersections, keep per road end the
cut line farthest from the intersection, connect the cut ends clockwise into
a convex polygon and finally cut the axes into Seg_Axes with their two Links.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.spatial import cKDTree

from ..errors import NetworkError, NoFilletExists, NonConvexIntersection, OffsetCollapse
from ..geom.curves import CurveView, ParamCurve, Polyline, _clip_loops
from ..geom.fillet import Arc, solve_offset_crossing
from ..geom.simplify import douglas_peucker_indices
from ..tolerances import DEFAULT_TOLERANCES
from .design import cluster_intersection_points, fillet_radius
from .types import (
    Arm,
    CenterlineSet,
    FilletRecord,
    Intersection,
    Link,
    Relation,
    Road,
    RoadNetwork2D,
    SegAxis,
)


def _warn(warnings, stage, entity, message):
    warnings.append({"stage": stage, "entity": str(entity), "message": message})


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


# ---------------------------------------------------------------------------
# input topology: crossings, snapping, straight continuations


def _segment_hits(p, q):
    """All proper crossings between segments of polylines p and q."""
    a0, a1 = p[:-1], p[1:]
    b0, b1 = q[:-1], q[1:]
    r = (a1 - a0)[:, None, :]
    s = (b1 - b0)[None, :, :]
    den = _cross(r, s)
    qp = b0[None, :, :] - a0[:, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = _cross(qp, s) / den
        u = _cross(qp, r) / den
    ok = (np.abs(den) > 1e-12) & (t >= 0) & (t <= 1) & (u >= 0) & (u <= 1)
    out = []
    for i, j in zip(*np.nonzero(ok)):
        x = a0[i] + t[i, j] * (a1[i] - a0[i])
        out.append((i + t[i, j], j + u[i, j], x))
    return out


def _project_on(point, poly):
    """Closest point on polyline: (distance, fractional vertex index, point)."""
    a, b = poly[:-1], poly[1:]
    ab = b - a
    den = (ab * ab).sum(axis=1)
    t = np.clip(((point - a) * ab).sum(axis=1) / den, 0.0, 1.0)
    proj = a + t[:, None] * ab
    d = np.hypot(*(proj - point).T)
    k = int(np.argmin(d))
    return float(d[k]), k + float(t[k]), proj[k]


def _split_crossings(roads, snap, warnings):
    """Split axes where they cross mid-way or where an end touches another axis."""
    pts = [r.axis.points.copy() for r in roads]
    n = len(roads)
    if n < 2:
        return list(roads)
    lo = np.array([p.min(axis=0) for p in pts]) - snap
    hi = np.array([p.max(axis=0) for p in pts]) + snap
    cuts = {k: [] for k in range(n)}
    for i in range(n):
        ends_i = pts[i][[0, -1]]
        for j in range(n):
            if j == i or np.any(lo[j] > hi[i]) or np.any(hi[j] < lo[i]):
                continue
            ends_j = pts[j][[0, -1]]
            if j > i:
                for ti, tj, x in _segment_hits(pts[i], pts[j]):
                    if min(np.hypot(*(ends_i - x).T).min(), np.hypot(*(ends_j - x).T).min()) <= snap:
                        continue
                    cuts[i].append((ti, x))
                    cuts[j].append((tj, x))
            # an end of road i resting on the interior of road j
            for e in (0, -1):
                d, tj, x = _project_on(pts[i][e], pts[j])
                if d <= snap and np.hypot(*(ends_j - x).T).min() > snap:
                    cuts[j].append((tj, x.copy()))
                    pts[i][e] = x
    out = []
    for k, road in enumerate(roads):
        p = pts[k]
        if not cuts[k]:
            out.append(replace(road, axis=Polyline.cleaned(p)) if not np.array_equal(p, road.axis.points) else road)
            continue
        cs = sorted(cuts[k], key=lambda c: c[0])
        merged = []
        for t, x in cs:
            if merged and np.hypot(*(merged[-1][1] - x)) <= snap:
                continue
            merged.append((t, x))
        pieces, start, cur = [], p[0], [p[0]]
        idx = 1
        for t, x in merged:
            seg = int(math.floor(t))
            while idx <= seg and idx < len(p):
                cur.append(p[idx])
                idx += 1
            cur.append(x)
            pieces.append(cur)
            cur = [x]
        cur.extend(p[idx:])
        pieces.append(cur)
        pieces = [q for q in pieces if np.hypot(*np.diff(np.array(q), axis=0).T).sum() > snap]
        for m, q in enumerate(pieces):
            out.append(replace(road, id=f"{road.id}.{m}", axis=Polyline.cleaned(q), source_ids=road.source_ids))
        _warn(warnings, "build_network", road.id, f"axis split into {len(pieces)} pieces at crossings")
    return out


def _endpoint_nodes(roads, snap):
    """Cluster axis endpoints within ``snap``; returns node positions and per-road (start, end) nodes."""
    ends = np.array([[r.axis.points[0], r.axis.points[-1]] for r in roads]).reshape(-1, 2)
    ds = DisjointSet(range(len(ends)))
    if len(ends) > 1:
        for a, b in cKDTree(ends).query_pairs(snap):
            ds.merge(a, b)
    groups = sorted((sorted(g) for g in ds.subsets()), key=lambda g: g[0])
    node_of = np.empty(len(ends), dtype=int)
    pos = []
    for nid, g in enumerate(groups):
        node_of[g] = nid
        pos.append(ends[g[0]].copy())
    return np.array(pos), node_of.reshape(-1, 2)


def _snap_roads(roads, snap):
    pos, rn = _endpoint_nodes(roads, snap)
    out = []
    for r, (a, b) in zip(roads, rn):
        p = r.axis.points
        if np.array_equal(p[0], pos[a]) and np.array_equal(p[-1], pos[b]):
            out.append(r)
            continue
        q = p.copy()
        q[0], q[-1] = pos[a], pos[b]
        out.append(replace(r, axis=Polyline.cleaned(q)))
    return out


def _merge_straight(roads, snap, max_turn_deg, warnings):
    """Join two roads meeting end to end with nearly the same heading."""
    roads = list(roads)
    while True:
        pos, rn = _endpoint_nodes(roads, snap)
        incident = {}
        for k, (a, b) in enumerate(rn):
            incident.setdefault(a, []).append((k, False))
            incident.setdefault(b, []).append((k, True))
        done = True
        for node in sorted(incident):
            arms = incident[node]
            if len(arms) != 2 or arms[0][0] == arms[1][0]:
                continue
            (ka, ea), (kb, eb) = arms
            ra, rb = roads[ka], roads[kb]
            if (ra.width, ra.design_speed, ra.lanes_per_link, ra.lane_width) != (
                rb.width, rb.design_speed, rb.lanes_per_link, rb.lane_width):
                continue
            pa = ra.axis.points if ea else ra.axis.points[::-1]  # ends at node
            pb = rb.axis.points[::-1] if eb else rb.axis.points  # starts at node
            da = pa[-1] - pa[-2]
            db = pb[1] - pb[0]
            turn = math.degrees(math.atan2(abs(_cross(da, db)), float(da @ db)))
            if turn >= max_turn_deg:
                continue
            joined = np.vstack([pa, pb[1:]])
            new = replace(ra, id=f"{ra.id}+{rb.id}", axis=Polyline.cleaned(joined),
                          source_ids=tuple(ra.source_ids) + tuple(rb.source_ids))
            _warn(warnings, "build_network", new.id, f"merged straight continuation ({turn:.2f} deg)")
            roads = [r for k, r in enumerate(roads) if k not in (ka, kb)]
            roads.insert(min(ka, kb), new)
            done = False
            break
        if done:
            return roads


# ---------------------------------------------------------------------------
# per-junction geometry


class _ArmGeom:
    """Road end seen from its junction: arc length t runs outward from the node."""

    def __init__(self, road_index, at_end, curve, width):
        self.road_index = road_index
        self.at_end = at_end
        self.curve = curve
        self.width = width
        self.view = CurveView(curve, curve.length, 0.0) if at_end else CurveView(curve, 0.0, curve.length)
        tan = self.view.tangent(0.0)
        self.angle = math.atan2(tan[1], tan[0])

    def base_s(self, t):
        return self.curve.length - t if self.at_end else t

    def t_of(self, s):
        return self.curve.length - s if self.at_end else s

    def outward_sign(self):
        # left-of-outward equals left of road direction at the start, right at the end
        return -1.0 if self.at_end else 1.0


def cut_points(curve, s, width):
    """(left, axis, right) ends of the cross-section at arc length ``s`` (road direction)."""
    mid = curve.position(s)
    n = curve.normal(s)
    return mid + 0.5 * width * n, mid, mid - 0.5 * width * n


def _fillets_at(node, arms, roads, params, tol, warnings):
    """Fillets between every pair of angularly adjacent arms (counter-clockwise).

    A corner whose offset boundaries only meet behind the junction (a nearly
    straight pass with a width change) gets no fillet.
    """
    out = []
    k = len(arms)
    if k < 2:
        return out
    for idx in range(k):
        a = arms[idx]
        b = arms[(idx + 1) % k]
        if k == 2 and idx == 1 and a is b:
            break
        sector = (b.angle - a.angle) % (2 * math.pi)
        if sector >= math.pi - tol.parallel_angle:
            continue
        if sector < tol.parallel_angle:
            raise NoFilletExists(
                f"roads {roads[a.road_index].id} and {roads[b.road_index].id} leave the junction in parallel",
                f"junction_{node}")
        ra, rb = roads[a.road_index], roads[b.road_index]
        radius = fillet_radius(min(ra.design_speed, rb.design_speed), params["u"], params["i"])
        da = 0.5 * a.width + radius
        db = -(0.5 * b.width + radius)
        ta0, tb0 = a.view.tangent(0.0), b.view.tangent(0.0)
        na0 = np.array([-ta0[1], ta0[0]])
        nb0 = np.array([-tb0[1], tb0[0]])
        rhs = b.view.position(0.0) + db * nb0 - a.view.position(0.0) - da * na0
        try:
            guess = np.linalg.solve(np.column_stack([ta0, -tb0]), rhs)
        except np.linalg.LinAlgError:
            guess = np.array([abs(da), abs(db)])
        if guess.min() < 0.0:
            _warn(warnings, "build_network", f"junction_{node}",
                  f"boundaries of {ra.id} and {rb.id} diverge; corner left without fillet")
            continue
        sol = solve_offset_crossing(a.view, da, b.view, db, guess)
        if sol is None:
            raise NoFilletExists(
                f"fillet radius {radius:.2f} m does not fit between roads "
                f"{ra.id} and {rb.id}", f"junction_{node}")
        ta, tb = sol
        pa = a.view.offset_points(ta, 0.5 * a.width)
        pb = b.view.offset_points(tb, -0.5 * b.width)
        center = a.view.offset_points(ta, da)
        a0 = math.atan2(*(pa - center)[::-1]) if radius > 0 else 0.0
        a1 = math.atan2(*(pb - center)[::-1]) if radius > 0 else 0.0
        ccw = float(_cross(pa - center, pb - center)) > 0
        arc = Arc(center, radius, a0, a1, ccw, pa, pb, float(ta), float(tb))
        out.append(FilletRecord(
            junction=node, road_a=a.road_index, s_a=float(a.base_s(ta)),
            road_b=b.road_index, s_b=float(b.base_s(tb)), arc=arc,
            side_a=a.outward_sign(), side_b=-b.outward_sign()))
    return out


def trim_segment_ends(candidates, centroid, curves):
    """Pick one cut per road end: the candidate farthest from ``centroid``.

    ``candidates`` maps (road_index, at_end) to candidate arc lengths on the
    road's curve. Equal distances keep the cut with the smaller arc length.
    """
    chosen = {}
    for key in sorted(candidates):
        road_index, _ = key
        best = None
        for s in sorted(set(candidates[key])):
            d = float(np.hypot(*(curves[road_index].position(s) - centroid)))
            if best is None or d > best[0] + 1e-9:
                best = (d, s)
        chosen[key] = best[1]
    return chosen


def polygon_turns(poly):
    """Cross products of consecutive edges at every vertex."""
    prev = np.roll(poly, 1, axis=0)
    nxt = np.roll(poly, -1, axis=0)
    return _cross(poly - prev, nxt - poly)


def signed_area(poly):
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def is_convex_cw(poly, eps=1e-9):
    """True if ``poly`` is a simple convex polygon traversed clockwise."""
    poly = np.asarray(poly, dtype=float)
    if len(poly) < 3 or signed_area(poly) >= 0:
        return False
    scale = float(np.ptp(poly, axis=0).max()) ** 2
    if np.any(polygon_turns(poly) > eps * scale):
        return False
    e = np.diff(np.vstack([poly, poly[:1]]), axis=0)
    ang = np.arctan2(_cross(e, np.roll(e, -1, axis=0)), (e * np.roll(e, -1, axis=0)).sum(axis=1))
    return abs(ang.sum() + 2 * math.pi) < 1e-6


def assemble_intersection(points, labels=None, eps=1e-9):
    """Sort points clockwise about their centroid and check convexity.

    Returns ``(polygon, labels)`` in clockwise order; raises
    NonConvexIntersection if the polygon is not convex.
    """
    pts = np.asarray(points, dtype=float)
    labels = list(range(len(pts))) if labels is None else list(labels)
    c = pts.mean(axis=0)
    ang = np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0])
    order = sorted(range(len(pts)), key=lambda j: (-ang[j], j))
    poly = pts[order]
    if not is_convex_cw(poly, eps):
        raise NonConvexIntersection(f"polygon with {len(pts)} vertices is not convex")
    return poly, [labels[j] for j in order]


def _arm_polygon(arms, s_cut, curves, widths):
    """Clockwise vertex list (plus, minus per arm) for arms ordered clockwise."""
    verts, owner = [], []
    for j, arm in enumerate(arms):
        left, _, right = cut_points(curves[arm.road_index], s_cut[j], widths[arm.road_index])
        plus, minus = (right, left) if arm.at_end else (left, right)
        verts += [plus, minus]
        owner += [j, j]
    return np.array(verts), owner


def _convex_cuts(iid, arms, s_cut, curves, widths, tol):
    """Push reflex arms outward until the clockwise cut polygon is convex."""
    s_cut = list(s_cut)
    for _ in range(tol.convex_max_iter):
        poly, owner = _arm_polygon(arms, s_cut, curves, widths)
        scale = float(np.ptp(poly, axis=0).max()) ** 2
        turns = polygon_turns(poly)
        bad = sorted({owner[v] for v in np.flatnonzero(turns > tol.convexity_eps * scale)})
        if not bad and is_convex_cw(poly, tol.convexity_eps):
            return s_cut, poly
        if not bad:
            break
        for j in bad:
            arm = arms[j]
            step = max(tol.convex_push_step, 0.02 * widths[arm.road_index])
            length = curves[arm.road_index].length
            t = arm.t_of(s_cut[j]) + step
            if t > length - tol.min_link_length:
                raise NonConvexIntersection("cannot make intersection convex within road length",
                                            f"intersection_{iid}")
            s_cut[j] = arm.base_s(t)
    raise NonConvexIntersection("intersection polygon is not convex", f"intersection_{iid}")


# ---------------------------------------------------------------------------


def _resample(curve, s0, s1, step):
    n = max(1, int(math.ceil(abs(s1 - s0) / step - 1e-9)))
    s = np.linspace(s0, s1, n + 1)
    return s


def _boundary(curve, s, width, side, tol, road_id):
    sig = 1.0 if side == "left" else -1.0
    pts = curve.position(s) + sig * 0.5 * width * curve.normal(s)
    kappa = np.asarray(curve.curvature(s))
    bad = 1.0 - sig * 0.5 * width * kappa <= 0.0
    if bad.any():
        step = float(np.diff(s).mean()) if len(s) > 1 else 1.0
        pts, removed = _clip_loops(pts, bad, window=max(8, int(math.ceil(math.pi * width / step)) + 4))
        if removed > 0.5 * len(s):
            raise OffsetCollapse(f"half width {width / 2:g} m exceeds the axis curvature radius", road_id)
    return pts


def build_network(cl: CenterlineSet, tol=DEFAULT_TOLERANCES) -> RoadNetwork2D:
    """Build Links, Intersections, Seg_Axes and the +/- relation network."""
    warnings = []
    params = {"u": cl.u, "i": cl.i, "l_dis": cl.l_dis}
    roads = _split_crossings(list(cl.roads), tol.snap, warnings)
    roads = _snap_roads(roads, tol.snap)
    roads = _merge_straight(roads, tol.snap, tol.merge_angle_deg, warnings)
    curves = [ParamCurve(r.axis) for r in roads]
    widths = [r.width for r in roads]
    node_pos, road_nodes = _endpoint_nodes(roads, tol.snap)

    incident = {}
    for k, (a, b) in enumerate(road_nodes):
        incident.setdefault(int(a), []).append(_ArmGeom(k, False, curves[k], widths[k]))
        incident.setdefault(int(b), []).append(_ArmGeom(k, True, curves[k], widths[k]))
    junctions = {}
    for node in sorted(incident):
        arms = incident[node]
        if len(arms) >= 2:
            arms.sort(key=lambda a: (a.angle, a.road_index, a.at_end))
            junctions[node] = arms

    # Step 2: fillets and tangency point clustering
    fillets = []
    for node, arms in junctions.items():
        fillets.extend(_fillets_at(node, arms, roads, params, tol, warnings))
    tpoints = []
    for f in fillets:
        tpoints += [f.arc.tangency_a, f.arc.tangency_b]
    by_node = {}
    for j, f in enumerate(fillets):
        by_node.setdefault(f.junction, []).extend([2 * j, 2 * j + 1])
    clusters = cluster_intersection_points(tpoints, cl.l_dis, groups=by_node.values()) if tpoints else []
    cluster_nodes = []
    seen = set()
    for members in clusters:
        nodes = sorted({fillets[m // 2].junction for m in members})
        cluster_nodes.append((nodes, sorted({m // 2 for m in members})))
        seen.update(nodes)
    for node in junctions:
        if node not in seen:
            cluster_nodes.append(([node], []))
    cluster_nodes.sort(key=lambda c: c[0][0])

    # Steps 3-4: trim road ends and assemble convex intersection polygons
    cut_at = {}  # (road_index, at_end) -> (intersection id, s)
    absorbed = set()
    intersections = []
    for iid, (nodes, fids) in enumerate(cluster_nodes):
        node_set = set(nodes)
        if len(nodes) > 1:
            _warn(warnings, "build_network", f"intersection_{iid}",
                  f"junctions {nodes} merged: tangency points closer than L_dis")
            for k, (a, b) in enumerate(road_nodes):
                if a != b and int(a) in node_set and int(b) in node_set:
                    absorbed.add(k)
                    _warn(warnings, "build_network", roads[k].id, f"road absorbed into intersection_{iid}")
        arms = [a for n in nodes for a in junctions[n] if a.road_index not in absorbed]
        if len(arms) < 2:
            raise NetworkError("intersection with fewer than 2 arms", f"intersection_{iid}")
        if len(nodes) > 1:
            center = np.mean([node_pos[n] for n in nodes], axis=0)
            for a in arms:
                v = a.view.position(min(a.view.length, cl.l_dis)) - center
                a.angle = math.atan2(v[1], v[0])
            arms.sort(key=lambda a: (a.angle, a.road_index, a.at_end))

        candidates = {(a.road_index, a.at_end): [] for a in arms}
        tp = []
        for j in fids:
            f = fillets[j]
            tp += [f.arc.tangency_a, f.arc.tangency_b]
            for road, s in ((f.road_a, f.s_a), (f.road_b, f.s_b)):
                arm = _arm_for(junctions[f.junction], road, s)
                key = (arm.road_index, arm.at_end)
                if key in candidates:
                    candidates[key].append(s)
        centroid = np.mean(tp, axis=0) if tp else np.mean([node_pos[n] for n in nodes], axis=0)
        fallback_t = 0.5 * max(a.width for a in arms) + tol.min_link_length
        for key, cands in candidates.items():
            if not cands:
                arm = next(a for a in arms if (a.road_index, a.at_end) == key)
                cands.append(arm.base_s(min(fallback_t, arm.curve.length / 2)))
        chosen = trim_segment_ends(candidates, centroid, curves)

        arms_cw = arms[::-1]  # counter-clockwise sort reversed
        s_cut = [chosen[(a.road_index, a.at_end)] for a in arms_cw]
        s_cut, _ = _convex_cuts(iid, arms_cw, s_cut, curves, widths, tol)
        for a, s in zip(arms_cw, s_cut):
            cut_at[(a.road_index, a.at_end)] = (iid, s)
        intersections.append((iid, nodes, arms_cw, s_cut))

    # Step 5: seg axes and links
    seg_axes, links = [], []
    link_of = {}
    for k, road in enumerate(roads):
        if k in absorbed:
            continue
        curve = curves[k]
        i0, s0 = cut_at.get((k, False), (None, 0.0))
        i1, s1 = cut_at.get((k, True), (None, curve.length))
        if s1 - s0 < tol.min_link_length:
            raise NetworkError(
                f"road too short for its junction cuts ({s1 - s0:.2f} m left)", road.id)
        sid = len(seg_axes)
        s = _resample(curve, s0, s1, tol.sample_step)
        axis = curve.position(s)
        left_cut0, mid0, right_cut0 = cut_points(curve, s0, road.width)
        left_cut1, mid1, right_cut1 = cut_points(curve, s1, road.width)
        axis[0], axis[-1] = mid0, mid1
        keep = douglas_peucker_indices(axis, tol.dp_epsilon)
        axis_poly = Polyline(axis[keep])
        lid = {}
        for side, c0, c1 in (("left", left_cut0, left_cut1), ("right", right_cut0, right_cut1)):
            pts = _boundary(curve, s, road.width, side, tol, road.id)
            pts[0], pts[-1] = c0, c1
            bkeep = douglas_peucker_indices(pts, tol.dp_epsilon)
            bpoly = Polyline.cleaned(pts[bkeep])
            polygon = np.vstack([axis_poly.points, bpoly.points[::-1]])
            link = Link(len(links), sid, side, bpoly, polygon, i0, i1)
            lid[side] = link.id
            links.append(link)
        link_of[k] = lid
        seg_axes.append(SegAxis(sid, road.id, axis_poly, (lid["left"], lid["right"]), road.width,
                                (float(s0), float(s1)), i0, i1, CurveView(curve, s0, s1)))

    # intersection records, link order and relation signs
    out_inters, relations = [], []
    for iid, nodes, arms_cw, s_cut in intersections:
        pts, labels, arm_recs, seams = [], [], [], []
        for a, s in zip(arms_cw, s_cut):
            lid = link_of[a.road_index]
            plus, minus = (lid["right"], lid["left"]) if a.at_end else (lid["left"], lid["right"])
            left, mid, right = cut_points(curves[a.road_index], s, widths[a.road_index])
            pv, mv = (right, left) if a.at_end else (left, right)
            pts += [pv, mv]
            labels += [("+", plus, len(arm_recs)), ("-", minus, len(arm_recs))]
            arm_recs.append(Arm(a.road_index, a.at_end, float(s), plus, minus))
            seams.append((pv, mid, mv))
        poly, lab = assemble_intersection(np.array(pts), labels, tol.convexity_eps)
        cen = poly.mean(axis=0)
        ang = np.arctan2(poly[:, 1] - cen[1], poly[:, 0] - cen[0])
        plus_idx = [j for j, l in enumerate(lab) if l[0] == "+"]
        start = max(plus_idx, key=lambda j: (ang[j], -j))
        poly = np.roll(poly, -start, axis=0)
        lab = lab[start:] + lab[:start]
        for j in range(0, len(lab), 2):
            if lab[j][0] != "+" or lab[j + 1][0] != "-" or lab[j][2] != lab[j + 1][2]:
                raise NonConvexIntersection("clockwise vertex order breaks the +/- pairing",
                                            f"intersection_{iid}")
        order = [lab[j][2] for j in range(0, len(lab), 2)]
        arm_recs = [arm_recs[j] for j in order]
        seams = [seams[j] for j in order]
        out_inters.append(Intersection(iid, poly, tuple(l[1] for l in lab), arm_recs, seams, tuple(nodes)))
        for l in lab:
            relations.append(Relation(iid, l[1], l[0]))

    return RoadNetwork2D(
        roads=roads, curves=curves, seg_axes=seg_axes, links=links, intersections=out_inters,
        relations=relations, fillets=fillets, warnings=warnings,
        params={**params, "tolerances": tol.as_dict()},
    )


def _arm_for(arms, road_index, s):
    """The arm of ``road_index`` nearest to arc length ``s`` (a road may loop back)."""
    own = [a for a in arms if a.road_index == road_index]
    return min(own, key=lambda a: abs(a.t_of(s)))
