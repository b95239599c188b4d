import numpy as np
import pytest

from roadnet3d.errors import DegenerateSpan, NoFilletExists
from roadnet3d.geom import ParamCurve, cubic_bezier_from_tangents, tangency_residual, tangent_circle_fillet


def line(a, b):
    return ParamCurve(np.array([a, b], dtype=float))


def test_perpendicular_fillet_center():
    a = line([-50, 0], [50, 0])
    b = line([0, -50], [0, 50])
    arc = tangent_circle_fillet(a, b, 5.0)
    np.testing.assert_allclose(arc.center, [5.0, 5.0], atol=1e-9)
    np.testing.assert_allclose(arc.tangency_a, [5.0, 0.0], atol=1e-9)
    np.testing.assert_allclose(arc.tangency_b, [0.0, 5.0], atol=1e-9)


def test_fillet_symmetric_under_swap():
    a = line([-50, -10], [50, 10])
    b = line([10, -50], [-5, 50])
    f1 = tangent_circle_fillet(a, b, 7.0)
    f2 = tangent_circle_fillet(b, a, 7.0)
    np.testing.assert_allclose(f1.center, f2.center, atol=1e-8)


@pytest.mark.parametrize("angle", [25, 60, 90, 135, 160])
def test_fillet_center_matches_bisector_formula(angle):
    # two rays from the origin: circle center on the bisector at R / sin(theta/2)
    th = np.radians(angle)
    a = line([-60, 0], [60, 0])
    b = line(-60 * np.array([np.cos(th), np.sin(th)]), 60 * np.array([np.cos(th), np.sin(th)]))
    r = 6.0
    arc = tangent_circle_fillet(a, b, r)
    dist = np.hypot(*arc.center)
    assert dist == pytest.approx(r / np.sin(th / 2), rel=1e-9)
    assert tangency_residual(arc, a, arc.s_a, arc.tangency_a) < 1e-9
    assert tangency_residual(arc, b, arc.s_b, arc.tangency_b) < 1e-9


def test_fillet_on_curved_boundary():
    t = np.linspace(-1.0, 1.0, 60)
    a = ParamCurve(np.column_stack([60 * t, 8 * t**2]))
    b = line([5, -40], [5, 40])
    arc = tangent_circle_fillet(a, b, 4.0)
    assert tangency_residual(arc, a, arc.s_a, arc.tangency_a) < 1e-6
    assert tangency_residual(arc, b, arc.s_b, arc.tangency_b) < 1e-6
    assert np.hypot(*(arc.tangency_a - arc.center)) == pytest.approx(4.0, abs=1e-8)


def test_parallel_boundaries_have_no_fillet():
    with pytest.raises(NoFilletExists):
        tangent_circle_fillet(line([0, 0], [100, 0]), line([0, 5], [100, 5]), 3.0)


def test_near_parallel_lines_have_no_fillet():
    a = 1e-4
    with pytest.raises(NoFilletExists):
        tangent_circle_fillet(line([-50, 0], [50, 0]), line([-50, -50 * a], [50, 50 * a]), 3.0)


def test_arc_points_on_circle():
    arc = tangent_circle_fillet(line([-50, 0], [50, 0]), line([0, -50], [0, 50]), 5.0)
    pts = arc.points(9)
    np.testing.assert_allclose(np.hypot(*(pts - arc.center).T), 5.0)
    np.testing.assert_allclose(pts[0], arc.tangency_a, atol=1e-9)
    np.testing.assert_allclose(pts[-1], arc.tangency_b, atol=1e-9)


def test_bezier_endpoints_and_tangents():
    bz = cubic_bezier_from_tangents([0, 0, 1], [1, 0, 0], [10, 10, 1], [0, 1, 0])
    np.testing.assert_allclose(bz.point(0.0), [0, 0, 1])
    np.testing.assert_allclose(bz.point(1.0), [10, 10, 1])
    d0, d1 = bz.derivative(0.0), bz.derivative(1.0)
    assert np.cross(d0, [1, 0, 0]) == pytest.approx(np.zeros(3), abs=1e-12)
    assert d0 @ [1, 0, 0] > 0 and d1 @ [0, 1, 0] > 0
    assert bz.sample(16).shape == (16, 3)


def test_bezier_curvature_of_straight_is_zero():
    bz = cubic_bezier_from_tangents([0, 0], [1, 0], [9, 0], [1, 0])
    assert np.abs(bz.curvature(np.linspace(0, 1, 11))).max() < 1e-12


def test_bezier_degenerate_span():
    with pytest.raises(DegenerateSpan):
        cubic_bezier_from_tangents([0, 0], [1, 0], [0, 1e-9], [1, 0])


def test_bezier_collinear_is_straight():
    bz = cubic_bezier_from_tangents([0, 0, 0], [1, 0, 0], [10, 0, 0], [1, 0, 0])
    pts = bz.sample(11)
    np.testing.assert_allclose(pts[:, 1:], 0.0, atol=1e-12)
    np.testing.assert_allclose(bz.control_points[1], [10 / 3, 0, 0])


def test_bezier_random_curvature_finite():
    rng = np.random.default_rng(3)
    for _ in range(50):
        p0, p1 = rng.normal(size=3) * 10, rng.normal(size=3) * 10
        bz = cubic_bezier_from_tangents(p0, rng.normal(size=3), p1, rng.normal(size=3))
        k = bz.curvature(np.linspace(0, 1, 401))
        assert np.all(np.isfinite(k))
