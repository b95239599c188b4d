import numpy as np
import pytest

from roadnet3d.errors import InfeasibleFit
from roadnet3d.geom import ParamCurve
from roadnet3d.network import build_network
from roadnet3d.profile import (
    ControlVectorSet,
    elevate_link,
    fit_profile,
    flatten_intersection,
    menger_curvature,
    sample_control_vectors,
    select_control_vectors,
    stitch_junctions,
)
from roadnet3d.synthetic import flat_dem, ramp_dem, ridge_dem, ridge_road
from roadnet3d.terrain import HeightField

from fixtures import scene


class _Poly:
    def __init__(self, pts, k):
        self.polygon = np.asarray(pts, dtype=float)
        self.id = 0
        self.k = k


def test_flatten_examples():
    grid = np.array([[10.0, 12.0], [12.0, 14.0]])
    hf = HeightField(grid, 1.0)
    b = _Poly([[0.5, 0.5], [1.5, 0.5], [1.5, 1.5], [0.5, 1.5]], 2)
    assert flatten_intersection(b, hf).z == pytest.approx(12.0, abs=1e-12)
    assert flatten_intersection(b, HeightField(np.full((2, 2), 5.0), 1.0)).z == 5.0
    g6 = HeightField(np.array([[0.0, 0.0, 0.0], [6.0, 6.0, 6.0]]), 1.0)
    b6 = _Poly([[0.5, 0.5], [1.5, 0.5], [2.5, 0.5], [2.5, 1.5], [1.5, 1.5], [0.5, 1.5]], 3)
    assert flatten_intersection(b6, g6).z == pytest.approx(3.0, abs=1e-12)


def straight(length):
    return ParamCurve(np.array([[0.0, 0.0], [length, 0.0]]))


def test_flat_terrain_keeps_all_samples():
    cv = sample_control_vectors(straight(100.0), flat_dem((-10, -10, 110, 10), 7.0), ds=10.0)
    assert len(cv) == 11 and np.all(cv.h == 7.0)
    assert cv.n_total <= 100 // 10


def test_spike_is_dropped():
    hf = flat_dem((-10, -10, 110, 10), 0.0, cellsize=1.0)
    grid = hf.grid.copy()
    grid[:, 59:62] = 50.0  # the sample at s = 50 lands on x = 50 -> column 60
    hf = HeightField(grid, 1.0, hf.origin)
    cv = sample_control_vectors(straight(100.0), hf, ds=10.0, slope_max=0.08)
    assert 50.0 not in cv.s and 50.0 in cv.dropped
    assert cv.s[0] == 0.0 and cv.s[-1] == 100.0


def test_endpoint_always_kept():
    cv = sample_control_vectors(straight(97.0), flat_dem((-10, -10, 110, 10)), ds=10.0)
    assert cv.s[-1] == 97.0 and cv.s[0] == 0.0


def test_menger_curvature():
    assert menger_curvature((0, 0), (1, 0), (2, 0)) == 0.0
    # three points on a circle of radius 5
    k = menger_curvature((5, 0), (0, 5), (-5, 0))
    assert k == pytest.approx(0.2)


def test_curvature_difference_rule():
    s = np.arange(6) * 5.0
    h = np.array([0.0, 0.0, 0.0, 0.3, 0.0, 0.0])  # kink well above 0.1 curvature change
    keep = select_control_vectors(s, h, slope_max=None, dkappa_max=0.01)
    assert 3 not in keep and keep[0] == 0 and keep[-1] == 5


def test_fit_affine_and_parabola():
    s = np.linspace(0, 100, 21)
    p = fit_profile(ControlVectorSet(s, 1 + 0.03 * s, 5.0), seg_axis_id=3)
    assert p.max_curvature < 1e-9 and p.max_slope == pytest.approx(0.03)
    s = np.linspace(0, 10, 11)
    p = fit_profile(ControlVectorSet(s, 0.04 * s**2, 1.0), slope_max=None)
    assert p.max_curvature == pytest.approx(0.08, rel=1e-3)


def test_fit_infeasible_reports_seg_axis():
    s = np.array([0.0, 1.0, 2.0])
    with pytest.raises(InfeasibleFit, match="seg_axis_9"):
        fit_profile(ControlVectorSet(s, np.array([0.0, 5.0, 0.0]), 1.0), fit_tolerance=0.01,
                    max_pieces=4, seg_axis_id=9)


def test_ridge_profile_certificates():
    net = build_network(ridge_road())
    sa = net.seg_axes[0]
    cv = sample_control_vectors(sa.curve, ridge_dem(), 5.0)
    p = fit_profile(cv, seg_axis_id=sa.id)
    s = p.sweep(0.01)
    assert np.abs(p.curvature(s)).max() <= 0.1 * (1 + 1e-6)
    assert np.abs(p.slope(s)).max() <= 0.08 * (1 + 1e-6)
    assert p.residual <= 0.5


def test_elevate_link_cross_section():
    net = build_network(ridge_road())
    sa = net.seg_axes[0]
    hf = ramp_dem((-50, -50, 550, 50), 0.02)
    prof = fit_profile(sample_control_vectors(sa.curve, hf), seg_axis_id=0)
    z = elevate_link(net.links[0], prof, net)
    assert z(sa.curve.position(20.0)) == prof(20.0)
    p1 = sa.curve.offset_points(120.0, 1.0)
    p3 = sa.curve.offset_points(120.0, 3.0)
    assert abs(z(p1) - z(p3)) < 1e-9
    # straight axis and linear profile: z linear in x
    xs = np.array([50.0, 150.0, 250.0])
    zs = np.array([z(np.array([x, 2.0])) for x in xs])
    assert zs[2] - zs[1] == pytest.approx(zs[1] - zs[0], abs=1e-6)


def _stitch_setup(offset):
    cl, dem = scene("cross")
    net = build_network(cl)
    elev = {b.id: flatten_intersection(b, dem) for b in net.intersections}
    for e in list(elev):
        elev[e] = type(elev[e])(e, elev[e].z + offset)
    profiles = {sa.id: fit_profile(sample_control_vectors(sa.curve, dem), seg_axis_id=sa.id) for sa in net.seg_axes}
    return net, elev, profiles


def test_stitch_pins_junction_ends():
    net, elev, profiles = _stitch_setup(0.0)
    out = stitch_junctions(net, profiles, elev)
    for sa in net.seg_axes:
        p = out[sa.id]
        if sa.start_intersection is not None:
            assert p(0.0) == elev[sa.start_intersection].z
            assert p.slope(0.0) == 0.0
        if sa.end_intersection is not None:
            assert p(p.length) == elev[sa.end_intersection].z
        else:
            # dead end stays free
            assert "end" not in p.pins
        assert p.max_curvature <= 0.1 * (1 + 1e-6) and p.max_slope <= 0.08 * (1 + 1e-6)


def test_stitch_unchanged_when_already_pinned():
    net, elev, profiles = _stitch_setup(0.0)
    once = stitch_junctions(net, profiles, elev)
    twice = stitch_junctions(net, once, elev)
    assert all(twice[k] is once[k] for k in once)


def test_stitch_end_offset_bounded_change():
    s = np.linspace(0, 200, 41)
    cv = ControlVectorSet(s, 10.0 + 0.0 * s, 5.0)
    base = fit_profile(cv)
    pinned = fit_profile(cv, end_value=9.6, end_slope=0.0, **{})
    assert pinned(200.0) == 9.6
    sweep = np.linspace(0, 200, 2001)
    assert np.abs(pinned(sweep) - base(sweep)).max() <= 0.4 + 1e-9
