"""Polylines and arc-length parameterized interpolating curves.

Centerlines arrive as point columns. They are interpolated with a centripetal
Catmull-Rom spline (passes through every input point, no cusps) and then
re-parameterized by arc length through a Gauss-Legendre length table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from ..errors import DegeneratePolyline, OffsetCollapse

_SUBDIV = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(4)


@dataclass(frozen=True, eq=False)
class Polyline:
    """Ordered 2D points, at least two, no consecutive duplicates."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
            raise DegeneratePolyline(f"polyline needs >= 2 points of shape (n, 2), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise DegeneratePolyline("polyline has non-finite coordinates")
        seg = np.hypot(*np.diff(pts, axis=0).T)
        if np.any(seg <= 1e-9):
            raise DegeneratePolyline("polyline has consecutive duplicate points")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def cleaned(cls, points, min_sep=1e-9):
        """Build a polyline after dropping consecutive near-duplicates."""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if len(pts) == 0:
            raise DegeneratePolyline("empty polyline")
        keep = [0]
        for k in range(1, len(pts)):
            if np.hypot(*(pts[k] - pts[keep[-1]])) > min_sep:
                keep.append(k)
        if len(keep) < 2:
            raise DegeneratePolyline("polyline has fewer than 2 distinct points")
        if keep[-1] != len(pts) - 1:
            keep[-1] = len(pts) - 1
        return cls(pts[keep])

    def __len__(self):
        return len(self.points)

    @property
    def length(self):
        return float(np.hypot(*np.diff(self.points, axis=0).T).sum())

    def reversed(self):
        return Polyline(self.points[::-1].copy())


def _as_points(poly):
    if isinstance(poly, Polyline):
        return poly.points
    return Polyline.cleaned(poly).points


class _CurveBase:
    """Shared evaluators for anything exposing position/tangent/length."""

    length: float

    def normal(self, s):
        t = self.tangent(s)
        return np.stack([-t[..., 1], t[..., 0]], axis=-1)

    def sample(self, step):
        """Arc-length grid with spacing <= step, endpoints included."""
        n = max(1, int(np.ceil(self.length / step - 1e-9)))
        return np.linspace(0.0, self.length, n + 1)

    def offset_points(self, s, d):
        """Raw offset ``position(s) + d * normal(s)``; positive d is to the left."""
        return self.position(s) + d * self.normal(s)


class ParamCurve(_CurveBase):
    """Centripetal Catmull-Rom spline through ``points``, evaluated by arc length."""

    def __init__(self, points):
        pts = _as_points(points)
        self.points = pts
        n = len(pts)
        ext = np.vstack([2 * pts[0] - pts[1], pts, 2 * pts[-1] - pts[-2]])
        p0, p1, p2, p3 = ext[:-3], ext[1:-2], ext[2:-1], ext[3:]
        dt0 = np.hypot(*(p1 - p0).T)[:, None] ** 0.5
        dt1 = np.hypot(*(p2 - p1).T)[:, None] ** 0.5
        dt2 = np.hypot(*(p3 - p2).T)[:, None] ** 0.5
        m1 = (p1 - p0) / dt0 - (p2 - p0) / (dt0 + dt1) + (p2 - p1) / dt1
        m2 = (p2 - p1) / dt1 - (p3 - p1) / (dt1 + dt2) + (p3 - p2) / dt2
        m1 *= dt1
        m2 *= dt1
        # power basis per segment: a t^3 + b t^2 + c t + d
        self._coef = np.stack(
            [2 * p1 + m1 - 2 * p2 + m2, -3 * p1 - 2 * m1 + 3 * p2 - m2, m1, p1], axis=1
        )
        self.n_segments = n - 1

        # arc length table at _SUBDIV nodes per segment
        nodes = np.linspace(0.0, 1.0, _SUBDIV + 1)
        h = 0.5 / _SUBDIV
        mids = (nodes[:-1] + nodes[1:]) / 2
        tq = (mids[:, None] + h * _GL_X[None, :]).ravel()
        seg = np.repeat(np.arange(self.n_segments), tq.size)
        tt = np.tile(tq, self.n_segments)
        speed = np.hypot(*self._deriv1(seg, tt).T).reshape(self.n_segments, _SUBDIV, -1)
        piece = (speed * _GL_W).sum(axis=2) * h
        self._u_tab = np.concatenate([[0.0], (np.arange(self.n_segments)[:, None] + nodes[None, 1:]).ravel()])
        self._s_tab = np.concatenate([[0.0], np.cumsum(piece.ravel())])
        self.length = float(self._s_tab[-1])
        self._tab_pts = None

    # -- raw spline in global parameter u in [0, n_segments]
    def _split(self, u):
        u = np.clip(np.asarray(u, dtype=float), 0.0, self.n_segments)
        seg = np.minimum(np.floor(u).astype(int), self.n_segments - 1)
        return seg, u - seg

    def _eval(self, seg, t):
        c = self._coef[seg]
        t = t[..., None]
        return ((c[..., 0, :] * t + c[..., 1, :]) * t + c[..., 2, :]) * t + c[..., 3, :]

    def _deriv1(self, seg, t):
        c = self._coef[seg]
        t = t[..., None]
        return (3 * c[..., 0, :] * t + 2 * c[..., 1, :]) * t + c[..., 2, :]

    def _deriv2(self, seg, t):
        c = self._coef[seg]
        return 6 * c[..., 0, :] * t[..., None] + 2 * c[..., 1, :]

    def u_of_s(self, s):
        return np.interp(s, self._s_tab, self._u_tab)

    def s_of_u(self, u):
        return np.interp(u, self._u_tab, self._s_tab)

    # -- arc length evaluators
    def position(self, s):
        seg, t = self._split(self.u_of_s(s))
        return self._eval(seg, t)

    def tangent(self, s):
        seg, t = self._split(self.u_of_s(s))
        d = self._deriv1(seg, t)
        return d / np.linalg.norm(d, axis=-1, keepdims=True)

    def curvature(self, s):
        """Signed curvature, positive when turning left."""
        seg, t = self._split(self.u_of_s(s))
        d1 = self._deriv1(seg, t)
        d2 = self._deriv2(seg, t)
        cross = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
        return cross / np.linalg.norm(d1, axis=-1) ** 3

    def nearest(self, p):
        """Arc length and distance of the closest curve point to ``p``.

        Ties resolve to the smaller arc length.
        """
        p = np.asarray(p, dtype=float)
        if self._tab_pts is None:
            seg, t = self._split(self._u_tab)
            self._tab_pts = self._eval(seg, t)
        d2 = ((self._tab_pts - p) ** 2).sum(axis=1)
        k = int(np.argmin(d2))

        def g(u):
            seg, t = self._split(np.array(u))
            return float(np.dot(self._eval(seg, t) - p, self._deriv1(seg, t)))

        candidates = [self._u_tab[k]]
        lo = self._u_tab[max(k - 1, 0)]
        hi = self._u_tab[min(k + 1, len(self._u_tab) - 1)]
        for a, b in ((lo, self._u_tab[k]), (self._u_tab[k], hi)):
            if b <= a:
                continue
            ga, gb = g(a), g(b)
            if ga == 0.0:
                candidates.append(a)
            elif ga < 0.0 < gb:
                candidates.append(brentq(g, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps))
        best_s, best_d = None, np.inf
        for u in sorted(candidates):
            seg, t = self._split(np.array(u))
            dist = float(np.hypot(*(self._eval(seg, t) - p)))
            s = float(self.s_of_u(u))
            if dist < best_d - 1e-12 or (abs(dist - best_d) <= 1e-12 and s < best_s):
                best_s, best_d = s, dist
        return best_s, best_d


class CurveView(_CurveBase):
    """Sub-range of a curve, optionally reversed, re-based so that s starts at 0.

    ``CurveView(c, a, b)`` walks ``c`` from arc length ``a`` to ``b``; ``b < a``
    runs backwards.
    """

    def __init__(self, base, s0, s1):
        self.base = base
        self.s0 = float(s0)
        self.s1 = float(s1)
        self.sign = 1.0 if s1 >= s0 else -1.0
        self.length = abs(self.s1 - self.s0)

    def _map(self, s):
        return self.s0 + self.sign * np.asarray(s, dtype=float)

    def base_s(self, s):
        return self._map(s)

    def position(self, s):
        return self.base.position(self._map(s))

    def tangent(self, s):
        return self.sign * self.base.tangent(self._map(s))

    def curvature(self, s):
        return self.sign * self.base.curvature(self._map(s))

    def nearest(self, p):
        s, d = self.base.nearest(p)
        lo, hi = sorted((self.s0, self.s1))
        if lo - 1e-12 <= s <= hi + 1e-12:
            return min(max((s - self.s0) * self.sign, 0.0), self.length), d
        # fall back to a bounded scan of the viewed range
        grid = self.sample(min(0.5, max(self.length / 8, 1e-3)))
        dd = np.hypot(*(self.position(grid) - np.asarray(p)).T)
        k = int(np.argmin(dd))
        return float(grid[k]), float(dd[k])


def arc_length_parameterize(poly):
    """Interpolate a polyline and return its arc-length parameterized curve."""
    return ParamCurve(poly)


def _seg_intersection(p, p2, q, q2):
    r = p2 - p
    s = q2 - q
    den = r[0] * s[1] - r[1] * s[0]
    if abs(den) < 1e-15:
        return None
    qp = q - p
    t = (qp[0] * s[1] - qp[1] * s[0]) / den
    u = (qp[0] * r[1] - qp[1] * r[0]) / den
    if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
        return p + t * r
    return None


def _clip_loops(pts, bad, window):
    """Cut the loop around each run of inverted samples at its self-crossing.

    Returns the clipped points and how many input samples were dropped.
    """
    n = len(pts)
    out, src = [], []
    i = 0
    while i < n:
        if not bad[i]:
            out.append(pts[i])
            src.append(i)
            i += 1
            continue
        j = i
        while j < n and bad[j]:
            j += 1
        hit = None
        for a in range(i - 1, max(i - 1 - window, 0), -1):
            for b in range(j, min(j + window, n - 1)):
                x = _seg_intersection(pts[a - 1], pts[a], pts[b], pts[b + 1])
                if x is not None:
                    hit = (a, b, x)
                    break
            if hit:
                break
        if hit is None:
            i = j
            continue
        a, b, x = hit
        while src and src[-1] >= a:
            out.pop()
            src.pop()
        out.append(x)
        src.append(-1)
        i = b + 1
    kept = sum(1 for k in src if k >= 0)
    return np.array(out), n - kept


def offset_polyline(curve, d, side="left", step=1.0):
    """Offset a curve by ``d`` along its left or right normal.

    Samples every ``step`` meters of arc length. Where the curvature radius on
    the offset side drops below ``d`` the raw offset folds into a loop; such
    loops are cut at their self-crossing.
    """
    if d <= 0:
        raise ValueError("offset distance must be positive")
    sigma = {"left": 1.0, "right": -1.0}[side]
    s = curve.sample(min(step, max(curve.length / 4, 1e-6)))
    pts = curve.offset_points(s, sigma * d)
    kappa = np.asarray(curve.curvature(s))
    bad = 1.0 - sigma * d * kappa <= 0.0
    removed = 0
    if bad.any():
        pts, removed = _clip_loops(pts, bad, window=max(8, int(np.ceil(np.pi * d / step)) + 4))
        if removed > 0.5 * len(s):
            raise OffsetCollapse(f"offset {d:g} m removed {removed}/{len(s)} samples")
    return Polyline.cleaned(pts)
