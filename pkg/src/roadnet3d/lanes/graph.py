"""Lane layer: L_Lanes inside Links, I_Lanes across Intersections, Connectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidParams, LaneOverflow
from ..geom.bezier import CubicBezier, cubic_bezier_from_tangents


@dataclass(eq=False)
class LLane:
    id: int
    link_id: int
    index: int  # 1 = next to the seg axis
    centerline: np.ndarray  # (n, 3) in driving direction
    relations: list = field(default_factory=list)  # (intersection id, sign)
    offset: float = 0.0  # signed distance from the seg axis, left positive
    forward: bool = True  # True when driving along the road direction
    _tangents: tuple = field(default=None, repr=False)  # 3D start and end directions

    def end_tangent(self):
        return _unit(self._tangents[1])

    def start_tangent(self):
        return _unit(self._tangents[0])



@dataclass(eq=False)
class ILane:
    id: int
    intersection_id: int
    from_llane: int
    to_llane: int
    bezier: CubicBezier

    @property
    def control_points(self):
        return self.bezier.control_points

    def sample(self, n=16):
        return self.bezier.sample(n)


@dataclass(frozen=True)
class Connector:
    from_link: int
    to_link: int
    witness: int


@dataclass(eq=False)
class LaneGraph:
    llanes: list
    ilanes: list
    connectors: list
    adjacency: dict = field(default_factory=dict)  # llane id -> successor llane ids


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _lane_params(road, lane_width, lanes_per_link):
    lw = road.lane_width if road.lane_width is not None else lane_width
    n = road.lanes_per_link if road.lanes_per_link is not None else lanes_per_link
    return float(lw), int(n)


def generate_l_lanes(net, profiles=None, lane_width=3.5, lanes_per_link=1, step=None):
    """Offset copies of each Seg_Axis inside its Links, elevated by the profiles.

    Right-side Links carry traffic along the road direction, left-side Links
    against it. Lane i sits at (i - 1/2) * lane_width from the axis.
    """
    if not lane_width > 0 or lanes_per_link < 1:
        raise InvalidParams(f"need lane_width > 0 and lanes_per_link >= 1, got {lane_width}, {lanes_per_link}")
    step = step or net.params.get("tolerances", {}).get("sample_step", 1.0)
    road_of = {r.id: r for r in net.roads}
    sign_of = {(r.intersection, r.link): r.sign for r in net.relations}
    lanes = []
    for link in net.links:
        sa = net.seg_axes[link.seg_axis_id]
        lw, n = _lane_params(road_of[sa.road_id], lane_width, lanes_per_link)
        if n * lw > sa.width / 2 + 1e-9:
            raise LaneOverflow(f"{n} lanes of {lw:g} m exceed half width {sa.width / 2:g} m", f"link_{link.id}")
        curve = sa.curve
        ns = max(1, int(math.ceil(curve.length / step - 1e-9)))
        s = np.linspace(0.0, curve.length, ns + 1)
        tan = curve.tangent(s)
        nrm = np.stack([-tan[:, 1], tan[:, 0]], axis=1)
        prof = profiles[sa.id] if profiles is not None else None
        z = prof(s) if prof is not None else np.zeros_like(s)
        slope = prof.slope(s) if prof is not None else np.zeros_like(s)
        sgn = link.half_width_sign
        forward = link.side == "right"
        for idx in range(1, n + 1):
            d = sgn * (idx - 0.5) * lw
            xy = curve.position(s) + d * nrm
            pts = np.column_stack([xy, z])
            t3 = np.column_stack([tan, slope])
            t0, t1 = t3[0], t3[-1]
            if not forward:
                pts = pts[::-1]
                t0, t1 = -t3[-1], -t3[0]
            rel = []
            start_i, end_i = (sa.start_intersection, sa.end_intersection) if forward else \
                (sa.end_intersection, sa.start_intersection)
            if start_i is not None:
                rel.append((start_i, sign_of[(start_i, link.id)]))
            if end_i is not None:
                rel.append((end_i, sign_of[(end_i, link.id)]))
            lanes.append(LLane(len(lanes), link.id, idx, pts, rel, d, forward, _tangents=(t0, t1)))
    return lanes


def incoming_outgoing(intersection, llanes):
    """Lanes ending at (``+``) and starting at (``-``) the intersection, per incident Link."""
    by_link = {}
    for lane in llanes:
        by_link.setdefault(lane.link_id, []).append(lane)
    for v in by_link.values():
        v.sort(key=lambda l: l.index)
    return by_link


def generate_i_lanes(intersection, llanes, z=None, handle_scale=1.0 / 3.0, start_id=0):
    """Turning trajectories across one Intersection.

    Incident Links n_1..n_M are in clockwise order with "+" (inbound) Links
    at odd positions. For each inbound Link the loop walks k = i+1, i+2, ...
    around the boundary, skipping the outbound Link of the same road, and
    joins every lane pair (fromN, toN) of the two Links.
    """
    links = list(intersection.links)
    m = len(links)
    lanes_of = incoming_outgoing(intersection, llanes)
    out = []
    seen = set()
    for i in range(0, m, 2):  # 1-based odd positions
        num = 0
        k = i + 1
        while num < m // 2:
            if k >= m:
                k -= m
            if k % 2 == 1:
                num += 1
                if k != i + 1:
                    for a in lanes_of.get(links[i], []):
                        for b in lanes_of.get(links[k], []):
                            if (a.id, b.id) in seen:
                                continue
                            seen.add((a.id, b.id))
                            out.append(_bezier_lane(start_id + len(out), intersection.id, a, b, z, handle_scale))
            k += 1
    return out


def _bezier_lane(lid, iid, a, b, z, handle_scale):
    p0 = a.centerline[-1]
    p1 = b.centerline[0]
    t0 = a.end_tangent()
    t1 = b.start_tangent()
    if z is None:
        bz = cubic_bezier_from_tangents(p0, t0, p1, t1, handle_scale)
    else:
        # flat intersection: horizontal handles, every control point at z
        flat = cubic_bezier_from_tangents(p0[:2], t0[:2], p1[:2], t1[:2], handle_scale)
        cp = np.column_stack([flat.control_points, np.full(4, float(z))])
        cp[0], cp[3] = p0, p1
        cp[0, 2] = cp[3, 2] = z
        bz = CubicBezier(cp)
    return ILane(lid, iid, a.id, b.id, bz)


def build_connectors(ilanes, llanes):
    """One Connector per (from Link, to Link) pair joined by an I_Lane."""
    link_of = {l.id: l.link_id for l in llanes}
    best = {}
    for il in ilanes:
        key = (link_of[il.from_llane], link_of[il.to_llane])
        if key not in best or il.id < best[key]:
            best[key] = il.id
    return [Connector(a, b, w) for (a, b), w in sorted(best.items())]


def build_lane_graph(net, profiles=None, intersection_elevations=None, lane_width=3.5,
                     lanes_per_link=1, step=None):
    llanes = generate_l_lanes(net, profiles, lane_width, lanes_per_link, step)
    ilanes = []
    for b in net.intersections:
        z = None
        if intersection_elevations is not None:
            z = intersection_elevations[b.id].z
        ilanes += generate_i_lanes(b, llanes, z, start_id=len(ilanes))
    connectors = build_connectors(ilanes, llanes)
    adjacency = {l.id: [] for l in llanes}
    for il in ilanes:
        adjacency[il.from_llane].append(il.to_llane)
    return LaneGraph(llanes, ilanes, connectors, adjacency)
