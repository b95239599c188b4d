import numpy as np
import pytest

from roadnet3d.errors import LaneOverflow
from roadnet3d.lanes import build_connectors, build_lane_graph, generate_i_lanes, generate_l_lanes
from roadnet3d.network import build_network
from roadnet3d.synthetic import cross, star_junction

from oracles import exhaustive_turns


def angle(u, v):
    u, v = np.asarray(u, float), np.asarray(v, float)
    return float(np.arctan2(np.linalg.norm(np.cross(u, v)), u @ v))


def test_single_lane_offset(cross_net):
    lanes = generate_l_lanes(cross_net, lane_width=3.5, lanes_per_link=1)
    assert len(lanes) == 8
    for lane in lanes:
        sa = cross_net.seg_axes[cross_net.links[lane.link_id].seg_axis_id]
        d = np.array([sa.curve.nearest(p)[1] for p in lane.centerline[:, :2]])
        np.testing.assert_allclose(d, 1.75, atol=1e-6)
        # straight link gives a straight lane
        seg = np.diff(lane.centerline[:, :2], axis=0)
        assert np.abs(seg[:, 0] * seg[0, 1] - seg[:, 1] * seg[0, 0]).max() < 1e-9


def test_lane_overflow(cross_net):
    with pytest.raises(LaneOverflow):
        generate_l_lanes(cross_net, lane_width=3.5, lanes_per_link=2)


def test_lane_relations(cross_net):
    b = cross_net.intersections[0]
    for lane in generate_l_lanes(cross_net):
        assert len(lane.relations) == 1
        iid, sign = lane.relations[0]
        assert iid == b.id
        # a lane whose last point touches the intersection arrives there
        ends_at = np.hypot(*(lane.centerline[-1, :2] - b.centroid)) < np.hypot(*(lane.centerline[0, :2] - b.centroid))
        assert sign == ("+" if ends_at else "-")


def test_cross_twelve_turns(cross_net):
    g = build_lane_graph(cross_net)
    assert len(g.ilanes) == 12 and len(g.connectors) == 12


def test_t_six_turns():
    net = build_network(star_junction([0, 90, 180]))
    g = build_lane_graph(net)
    assert len(g.ilanes) == 6


def test_two_lanes_one_connector_per_link_pair():
    net = build_network(cross(width=16.0))
    g = build_lane_graph(net, lanes_per_link=2)
    assert len(g.ilanes) == 48 and len(g.connectors) == 12
    assert build_connectors([], g.llanes) == []


@pytest.mark.parametrize("angles", [[0, 100], [90, 210, 330], [0, 90, 180, 270], [10, 80, 150, 220, 290]])
@pytest.mark.parametrize("n", [1, 2])
def test_algorithm_matches_exhaustive_pairs(angles, n):
    net = build_network(star_junction(angles, widths=16.0))
    llanes = generate_l_lanes(net, lanes_per_link=n)
    b = net.intersections[0]
    ilanes = generate_i_lanes(b, llanes)
    got = {(il.from_llane, il.to_llane) for il in ilanes}
    assert got == exhaustive_turns(b, llanes)
    assert len(got) == len(ilanes)


def test_tangency_signs_and_elevation(cross_net):
    class Z:
        def __init__(self, z):
            self.z = z

    g = build_lane_graph(cross_net, intersection_elevations={0: Z(0.0)})
    lanes = {l.id: l for l in g.llanes}
    for il in g.ilanes:
        a, b = lanes[il.from_llane], lanes[il.to_llane]
        d0 = il.bezier.derivative(0.0)
        d1 = il.bezier.derivative(1.0)
        assert angle(d0, a.end_tangent()) <= 1e-6
        assert angle(d1, b.start_tangent()) <= 1e-6
        assert np.abs(il.control_points[0] - a.centerline[-1]).max() < 1e-6
        assert np.abs(il.control_points[-1] - b.centerline[0]).max() < 1e-6
        assert dict(a.relations)[il.intersection_id] == "+"
        assert dict(b.relations)[il.intersection_id] == "-"
        assert np.all(il.control_points[:, 2] == 0.0)
        assert il.sample(16).shape == (16, 3)


def test_adjacency_weakly_connected(cross_net):
    g = build_lane_graph(cross_net)
    nodes = set(g.adjacency)
    edges = {(a, b) for a, succ in g.adjacency.items() for b in succ}
    seen, todo = set(), [next(iter(nodes))]
    while todo:
        v = todo.pop()
        if v in seen:
            continue
        seen.add(v)
        todo += [b for a, b in edges if a == v] + [a for a, b in edges if b == v]
    assert seen == nodes


def test_dead_end_has_no_ilanes():
    net = build_network(star_junction([0]))
    g = build_lane_graph(net)
    assert g.ilanes == [] and g.connectors == []
