"""Cubic B-spline fitting with bounded slope and curvature.

The fit is a single C2 cubic B-spline h(s) whose knot spans are refined by
bisection until every sample is matched within ``fit_tolerance``. Slope and
curvature limits are imposed on the control polygons of h' and h'' (convex
hull property), which bounds them everywhere, not only at samples:

    |h'|  <= slope_max    via the quadratic B-spline coefficients of h'
    |h''| <= kappa_max    via the linear B-spline coefficients of h''

and since curvature = h'' / (1 + h'^2)^1.5, |h''| <= kappa_max bounds it too.
The result is then cut at every curvature extremum so each piece has
monotone curvature.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import BSpline, PPoly, make_lsq_spline
from scipy.linalg import cholesky_banded, null_space
from scipy.optimize import minimize
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .._validation import check_samples
from ..errors import InfeasibleFit

# solve against slightly tightened bounds so certificates hold after roundoff
_MARGIN = 1e-6


def clamped_knots(a, b, interior):
    return np.concatenate([[a] * 4, np.asarray(interior, dtype=float), [b] * 4])


def derivative_operators(t):
    """Matrices mapping coefficients to the h' (quadratic) and h'' (linear) coefficients."""
    n = len(t) - 4
    d1 = np.zeros((n - 1, n))
    for j in range(n - 1):
        w = 3.0 / (t[j + 4] - t[j + 1])
        d1[j, j], d1[j, j + 1] = -w, w
    d2 = np.zeros((n - 2, n - 1))
    for j in range(n - 2):
        w = 2.0 / (t[j + 4] - t[j + 2])
        d2[j, j], d2[j, j + 1] = -w, w
    return d1, d2 @ d1


def _hat_gram_factor(x):
    """Upper Cholesky factor U of the Gram matrix of hat functions on nodes x (G = U^T U)."""
    h = np.diff(x)
    diag = np.zeros(len(x))
    diag[:-1] += h / 3
    diag[1:] += h / 3
    ab = np.zeros((2, len(x)))
    ab[0, 1:] = h / 6
    ab[1] = diag
    cb = cholesky_banded(ab)
    u = np.diag(cb[1]) + np.diag(cb[0, 1:], 1)
    return u


class PiecewiseBSpline:
    """C2 cubic B-spline split into pieces of monotone curvature."""

    def __init__(self, spline, breaks):
        self.spline = spline
        self.breaks = np.asarray(breaks, dtype=float)
        self._d1 = spline.derivative(1)
        self._d2 = spline.derivative(2)
        self._pieces = None

    @property
    def knots(self):
        return self.spline.t

    @property
    def coefficients(self):
        return self.spline.c

    @property
    def domain(self):
        return float(self.spline.t[0]), float(self.spline.t[-1])

    def control_points(self):
        """Control polygon in (s, h): Greville abscissae against coefficients."""
        t = self.spline.t
        g = (t[1:-3] + t[2:-2] + t[3:-1]) / 3.0
        return np.column_stack([g, self.spline.c])

    @property
    def pieces(self):
        """One clamped cubic B-spline per monotone-curvature interval."""
        if self._pieces is None:
            out = []
            t = self.spline.t
            for a, b in zip(self.breaks[:-1], self.breaks[1:]):
                inner = np.unique(t[(t > a + 1e-12) & (t < b - 1e-12)])
                tk = clamped_knots(a, b, inner)
                x = np.linspace(a, b, 4 * (len(inner) + 4))
                out.append(make_lsq_spline(x, self.spline(x), tk, k=3))
            self._pieces = out
        return self._pieces

    def __call__(self, s):
        return self.spline(s)

    def slope(self, s):
        return self._d1(s)

    def second_derivative(self, s):
        return self._d2(s)

    def curvature(self, s):
        d1 = self._d1(s)
        return self._d2(s) / (1.0 + d1 * d1) ** 1.5

    def bound_slope(self):
        """Upper bound on |h'| from the h' control polygon."""
        d1, _ = derivative_operators(self.spline.t)
        return float(np.abs(d1 @ self.spline.c).max())

    def bound_second(self):
        _, d2 = derivative_operators(self.spline.t)
        return float(np.abs(d2 @ self.spline.c).max())

    def sweep(self, step):
        """Dense sample grid with spacing <= step that also hits every break."""
        a, b = self.domain
        n = max(2, int(np.ceil((b - a) / step)) + 1)
        return np.unique(np.concatenate([np.linspace(a, b, n), self.breaks]))


def curvature_breaks(spline, zero_tol=1e-13):
    """Arc lengths where the curvature of ``spline`` switches between rising and falling."""
    pp = PPoly.from_spline(spline)
    x = pp.x
    cand = []
    for i in range(len(x) - 1):
        a, b = x[i], x[i + 1]
        if b - a <= 0:
            continue
        p = np.polynomial.Polynomial(pp.c[::-1, i])
        p1, p2, p3 = p.deriv(1), p.deriv(2), p.deriv(3)
        g = p3 * (1 + p1 * p1) - 3 * p1 * p2 * p2
        roots = g.roots() if g.degree() > 0 else []
        local = sorted(float(r.real) for r in roots if abs(r.imag) < 1e-9 and 0 < r.real < b - a)
        pts = [0.0] + local + [b - a]
        for u, v in zip(pts[:-1], pts[1:]):
            if v - u <= 1e-12:
                continue
            mid = 0.5 * (u + v)
            val = g(mid)
            scale = abs(p3(mid)) + abs(p1(mid) * p2(mid) ** 2) + 1e-300
            sign = 0 if abs(val) <= zero_tol * max(scale, 1.0) else (1 if val > 0 else -1)
            cand.append((a + u, a + v, sign))
    breaks = [float(x[0])]
    current = 0
    for u, v, sign in cand:
        if sign == 0:
            continue
        if current != 0 and sign != current:
            breaks.append(u)
        current = sign
    breaks.append(float(x[-1]))
    return np.array(breaks)


def _solve(design, target, eq_mat, eq_rhs, ineq_mat, lo, hi):
    """min ||design c - target|| s.t. eq_mat c = eq_rhs, lo <= ineq_mat c <= hi."""
    n = design.shape[1]
    if eq_mat is not None and len(eq_mat):
        c_p = np.linalg.lstsq(eq_mat, eq_rhs, rcond=None)[0]
        basis = null_space(eq_mat)
    else:
        c_p = np.zeros(n)
        basis = np.eye(n)
    if basis.shape[1] == 0:
        c = c_p
        if ineq_mat is not None:
            v = ineq_mat @ c
            slack = 1e-9 * max(1.0, float(np.abs(hi).max()))
            if np.any(v < lo - slack) or np.any(v > hi + slack):
                return None
        return c
    m = design @ basis
    r0 = target - design @ c_p
    z = np.linalg.lstsq(m, r0, rcond=None)[0]
    c = c_p + basis @ z
    if ineq_mat is None:
        return c
    v = ineq_mat @ c
    if np.all(v >= lo) and np.all(v <= hi):
        return c
    # bounded least squares through SLSQP on the null-space coordinates
    cm = ineq_mat @ basis
    off = ineq_mat @ c_p
    hess = m.T @ m
    grad0 = m.T @ r0
    scale = max(float(np.abs(hess).max()), 1e-12)

    def fun(zz):
        return 0.5 * float(zz @ hess @ zz) / scale - float(grad0 @ zz) / scale

    def jac(zz):
        return (hess @ zz - grad0) / scale

    cons = [
        {"type": "ineq", "fun": lambda zz: cm @ zz + off - lo, "jac": lambda zz: cm},
        {"type": "ineq", "fun": lambda zz: hi - cm @ zz - off, "jac": lambda zz: -cm},
    ]
    # start from the clipped unconstrained solution's projection
    res = minimize(fun, z, jac=jac, constraints=cons, method="SLSQP",
                   options={"maxiter": 500, "ftol": 1e-14})
    c = c_p + basis @ res.x
    v = ineq_mat @ c
    slack = 1e-9 * max(1.0, float(np.abs(hi).max()))
    if np.any(v < lo - slack) or np.any(v > hi + slack):
        return None
    return c


class MonotoneCurvatureSpline(RegressorMixin, BaseEstimator):
    """Estimator fitting h(s) with bounded curvature and monotone-curvature pieces.

    Parameters
    ----------
    kappa_max : float
        Curvature bound (1/m).
    slope_max : float or None
        Bound on |dh/ds|; None leaves the slope free.
    fit_tolerance : float
        Largest accepted |h(s_i) - h_i| over unpinned samples.
    max_pieces : int
        Upper limit on the number of knot spans tried during refinement.
    smoothing : float
        Relative weight of the bending energy; only regularizes spans with
        little data.
    """

    def __init__(self, kappa_max=0.1, slope_max=None, fit_tolerance=0.5, max_pieces=64, smoothing=1e-10):
        self.kappa_max = kappa_max
        self.slope_max = slope_max
        self.fit_tolerance = fit_tolerance
        self.max_pieces = max_pieces
        self.smoothing = smoothing

    def fit(self, X, y, start_value=None, end_value=None, start_slope=None, end_slope=None):
        s, h = check_samples(X, y)
        if self.kappa_max <= 0:
            raise ValueError("kappa_max must be positive")
        a, b = float(s[0]), float(s[-1])
        interior = np.array([])
        pins_start = start_value is not None
        pins_end = end_value is not None
        free = np.ones(len(s), dtype=bool)
        if pins_start:
            free &= s > a
        if pins_end:
            free &= s < b
        while True:
            t = clamped_knots(a, b, interior)
            c = self._fit_knots(s, h, t, start_value, end_value, start_slope, end_slope)
            n_spans = len(interior) + 1
            if c is None:
                # more spans give the constrained fit more freedom near pinned ends
                if 2 * n_spans > self.max_pieces:
                    raise InfeasibleFit(
                        f"slope/curvature bounds cannot be met with pinned ends ({n_spans} spans)")
                edges = np.concatenate([[a], interior, [b]])
                interior = np.sort(np.concatenate([interior, 0.5 * (edges[:-1] + edges[1:])]))
                continue
            spl = BSpline(t, c, 3, extrapolate=False)
            resid = np.abs(spl(s) - h)
            bad = free & (resid > self.fit_tolerance)
            if not bad.any():
                break
            edges = np.concatenate([[a], interior, [b]])
            span_of = np.clip(np.searchsorted(edges, s[bad], side="right") - 1, 0, n_spans - 1)
            # neighbours too: a span with no free samples (e.g. next to a
            # pinned end) may be the one lacking freedom
            to_split = np.unique(np.clip(np.concatenate([span_of - 1, span_of, span_of + 1]), 0, n_spans - 1))
            room = self.max_pieces - n_spans
            if room <= 0:
                raise InfeasibleFit(
                    f"residual {resid[free].max():.3g} m > {self.fit_tolerance:g} m with {n_spans} spans")
            to_split = to_split[:room]
            mids = 0.5 * (edges[to_split] + edges[to_split + 1])
            interior = np.sort(np.concatenate([interior, mids]))
        self.spline_ = PiecewiseBSpline(spl, curvature_breaks(spl))
        self.n_spans_ = len(interior) + 1
        self.residual_ = float(resid[free].max()) if free.any() else 0.0
        return self

    def _fit_knots(self, s, h, t, v0, v1, g0, g1):
        n = len(t) - 4
        design = BSpline.design_matrix(s, t, 3).toarray()
        d1, d2 = derivative_operators(t)
        nodes = t[3:-3]
        u = _hat_gram_factor(nodes)
        spans = len(nodes) - 1
        width = (t[-1] - t[0]) / spans
        lam = self.smoothing * max(len(s) / spans, 1.0) * width**3
        design_aug = np.vstack([design, np.sqrt(lam) * (u @ d2)])
        target = np.concatenate([h, np.zeros(u.shape[0])])

        eq_rows, eq_rhs = [], []
        if v0 is not None:
            eq_rows.append(np.eye(n)[0])
            eq_rhs.append(v0)
        if v1 is not None:
            eq_rows.append(np.eye(n)[-1])
            eq_rhs.append(v1)
        if g0 is not None:
            eq_rows.append(d1[0])
            eq_rhs.append(g0)
        if g1 is not None:
            eq_rows.append(d1[-1])
            eq_rhs.append(g1)
        eq_mat = np.array(eq_rows) if eq_rows else None
        eq_rhs = np.array(eq_rhs) if eq_rows else None

        rows, lo, hi = [d2], [], []
        k = self.kappa_max * (1 - _MARGIN)
        lo.append(np.full(d2.shape[0], -k))
        hi.append(np.full(d2.shape[0], k))
        if self.slope_max is not None:
            g = self.slope_max * (1 - _MARGIN)
            rows.append(d1)
            lo.append(np.full(d1.shape[0], -g))
            hi.append(np.full(d1.shape[0], g))
        c = _solve(design_aug, target, eq_mat, eq_rhs, np.vstack(rows), np.concatenate(lo), np.concatenate(hi))
        if c is None:
            return None
        # make pinned values exact
        if v0 is not None:
            c[0] = v0
            if g0 is not None:
                c[1] = v0 + g0 * (t[4] - t[1]) / 3.0
        if v1 is not None:
            c[-1] = v1
            if g1 is not None:
                c[-2] = v1 - g1 * (t[-2] - t[-5]) / 3.0
        return c

    def predict(self, X):
        check_is_fitted(self, "spline_")
        s = np.asarray(X, dtype=float).reshape(-1)
        return self.spline_(s)


def fit_bspline_monotone_curvature(samples, kappa_max, **kwargs):
    """Fit (s, h) samples; returns a :class:`PiecewiseBSpline`.

    Keyword arguments ``slope_max``, ``fit_tolerance``, ``max_pieces`` and
    ``smoothing`` go to the estimator; ``start_value``/``end_value`` and
    ``start_slope``/``end_slope`` pin the ends.
    """
    pins = {k: kwargs.pop(k) for k in ("start_value", "end_value", "start_slope", "end_slope") if k in kwargs}
    samples = np.asarray(samples, dtype=float)
    est = MonotoneCurvatureSpline(kappa_max=kappa_max, **kwargs)
    est.fit(samples[:, 0], samples[:, 1], **pins)
    return est.spline_
