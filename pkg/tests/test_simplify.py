import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadnet3d.geom import Polyline, douglas_peucker, douglas_peucker_indices

from oracles import dp_recursive


def test_collinear_points_are_dropped():
    pts = np.column_stack([np.arange(10.0), np.zeros(10)])
    assert douglas_peucker_indices(pts, 0.0) == [0, 9]


def test_kept_when_above_eps():
    pts = np.array([[0.0, 0.0], [5.0, 1.0], [10.0, 0.0]])
    assert douglas_peucker_indices(pts, 0.5) == [0, 1, 2]
    assert douglas_peucker_indices(pts, 1.0) == [0, 2]  # distance equal to eps is dropped


def test_type_preserved_and_negative_eps():
    p = Polyline(np.array([[0.0, 0.0], [1.0, 0.001], [2.0, 0.0]]))
    out = douglas_peucker(p, 0.01)
    assert isinstance(out, Polyline) and len(out) == 2
    with pytest.raises(ValueError):
        douglas_peucker(p, -1.0)


coords = st.floats(-100, 100, allow_nan=False, allow_infinity=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=2, max_size=12), st.sampled_from([0.0, 0.1, 1.0, 5.0, 20.0]))
def test_matches_recursive_oracle(pts, eps):
    assert douglas_peucker_indices(np.array(pts), eps) == dp_recursive(pts, eps)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=3, max_size=12), st.floats(0, 30))
def test_error_bound_property(pts, eps):
    pts = np.array(pts)
    keep = douglas_peucker_indices(pts, eps)
    assert keep[0] == 0 and keep[-1] == len(pts) - 1
    for a, b in zip(keep, keep[1:]):
        for k in range(a + 1, b):
            ab = pts[b] - pts[a]
            den = ab @ ab
            t = 0.0 if den == 0 else np.clip((pts[k] - pts[a]) @ ab / den, 0, 1)
            assert np.hypot(*(pts[k] - pts[a] - t * ab)) <= eps + 1e-9


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=2, max_size=12), st.floats(0, 30))
def test_idempotent(pts, eps):
    once = douglas_peucker(np.array(pts), eps)
    assert np.array_equal(douglas_peucker(once, eps), once)


def test_collinear_example():
    out = douglas_peucker(np.array([[0.0, 0.0], [5.0, 0.0], [10.0, 0.0]]), 0.1)
    np.testing.assert_array_equal(out, [[0, 0], [10, 0]])
