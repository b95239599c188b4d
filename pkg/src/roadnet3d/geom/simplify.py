"""Douglas-Peucker polyline compression."""

import numpy as np


def _segment_distances(pts, a, b):
    """Distance of pts to the segment a-b (vectorized)."""
    ab = b - a
    denom = float(ab @ ab)
    if denom == 0.0:
        return np.hypot(*(pts - a).T)
    t = np.clip(((pts - a) @ ab) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return np.hypot(*(pts - proj).T)


def douglas_peucker_indices(points, eps):
    """Indices of the points kept by Douglas-Peucker with tolerance ``eps``.

    A point is kept when its distance to the current chord exceeds ``eps``;
    with ``eps == 0`` only exactly collinear interior points are dropped.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    if n <= 2:
        return list(range(n))
    keep = np.zeros(n, dtype=bool)
    keep[0] = keep[-1] = True
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        d = _segment_distances(pts[i + 1:j], pts[i], pts[j])
        k = int(np.argmax(d))
        if d[k] > eps:
            m = i + 1 + k
            keep[m] = True
            stack.append((i, m))
            stack.append((m, j))
    return [int(k) for k in np.flatnonzero(keep)]


def douglas_peucker(poly, eps):
    """Simplify a polyline; returns the same type that was passed in."""
    from .curves import Polyline

    if eps < 0:
        raise ValueError("eps must be non-negative")
    pts = poly.points if isinstance(poly, Polyline) else np.asarray(poly, dtype=float)
    idx = douglas_peucker_indices(pts, eps)
    out = pts[idx]
    return Polyline(out) if isinstance(poly, Polyline) else out
