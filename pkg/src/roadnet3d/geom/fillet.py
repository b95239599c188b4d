"""Circular fillets tangent to two curves."""

from dataclasses import dataclass

import numpy as np

from ..errors import NoFilletExists


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


@dataclass(frozen=True, eq=False)
class Arc:
    center: np.ndarray
    radius: float
    start_angle: float
    end_angle: float
    ccw: bool
    tangency_a: np.ndarray
    tangency_b: np.ndarray
    s_a: float = 0.0
    s_b: float = 0.0

    @property
    def sweep(self):
        d = (self.end_angle - self.start_angle) % (2 * np.pi)
        return d if self.ccw else -((self.start_angle - self.end_angle) % (2 * np.pi))

    def points(self, n=16):
        ang = self.start_angle + np.linspace(0.0, 1.0, n) * self.sweep
        return self.center + self.radius * np.stack([np.cos(ang), np.sin(ang)], axis=1)


def solve_offset_crossing(curve_a, d_a, curve_b, d_b, guess, max_iter=60):
    """Find (sa, sb) with ``A(sa) + d_a nA(sa) == B(sb) + d_b nB(sb)``.

    Normals are left normals, so positive offsets lie to the left of each
    curve. Returns None when Newton leaves either curve or fails to converge.
    """
    sa, sb = float(guess[0]), float(guess[1])
    la, lb = curve_a.length, curve_b.length
    scale = 1.0 + float(np.abs(curve_a.position(0.0)).max())
    tol = 1e-11 * scale
    for _ in range(max_iter):
        sa = min(max(sa, 0.0), la)
        sb = min(max(sb, 0.0), lb)
        f = curve_a.offset_points(sa, d_a) - curve_b.offset_points(sb, d_b)
        if np.hypot(*f) < tol:
            return sa, sb
        ja = curve_a.tangent(sa) * (1.0 - d_a * float(curve_a.curvature(sa)))
        jb = -curve_b.tangent(sb) * (1.0 - d_b * float(curve_b.curvature(sb)))
        jac = np.column_stack([ja, jb])
        if abs(np.linalg.det(jac)) < 1e-14:
            return None
        step = np.linalg.solve(jac, -f)
        limit = 0.5 * max(la, lb)
        norm = float(np.hypot(*step))
        if norm > limit:
            step *= limit / norm
        sa_new, sb_new = sa + step[0], sb + step[1]
        if (sa_new < -1e-9 and sa <= 0.0) or (sa_new > la + 1e-9 and sa >= la):
            return None
        if (sb_new < -1e-9 and sb <= 0.0) or (sb_new > lb + 1e-9 and sb >= lb):
            return None
        sa, sb = sa_new, sb_new
    f = curve_a.offset_points(sa, d_a) - curve_b.offset_points(sb, d_b)
    if np.hypot(*f) < 1e3 * tol and 0.0 <= sa <= la and 0.0 <= sb <= lb:
        return sa, sb
    return None


def _approach(curve_a, curve_b, n=256):
    """Arc lengths where two curves cross, or where they come closest."""
    sa = np.linspace(0.0, curve_a.length, n)
    sb = np.linspace(0.0, curve_b.length, n)
    pa = curve_a.position(sa)
    pb = curve_b.position(sb)
    da = np.diff(pa, axis=0)
    db = np.diff(pb, axis=0)
    for i in range(n - 1):
        den = _cross(da[i], db)
        ok = np.abs(den) > 1e-15
        qp = pb[:-1] - pa[i]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = _cross(qp, db) / den
            u = _cross(qp, da[i]) / den
        hit = np.flatnonzero(ok & (t >= 0) & (t <= 1) & (u >= 0) & (u <= 1))
        if hit.size:
            j = int(hit[0])
            return sa[i] + t[j] * (sa[i + 1] - sa[i]), sb[j] + u[j] * (sb[j + 1] - sb[j])
    d2 = ((pa[:, None, :] - pb[None, :, :]) ** 2).sum(axis=2)
    i, j = np.unravel_index(int(np.argmin(d2)), d2.shape)
    return float(sa[i]), float(sb[j])


def tangent_circle_fillet(boundary_a, boundary_b, radius, parallel_angle=1e-3):
    """Circle of ``radius`` tangent to both curves.

    The circle sits in the sector spanned by the forward tangent directions of
    the two curves at their crossing (or closest approach), so swapping the
    arguments yields the same circle.
    """
    if radius <= 0:
        raise NoFilletExists("fillet radius must be positive")
    sa0, sb0 = _approach(boundary_a, boundary_b)
    ta = boundary_a.tangent(sa0)
    tb = boundary_b.tangent(sb0)
    c = float(_cross(ta, tb))
    angle = np.arctan2(abs(c), float(ta @ tb))
    if min(angle, np.pi - angle) < parallel_angle:
        raise NoFilletExists(f"boundaries parallel within {angle:.2e} rad")
    sig_a = 1.0 if c > 0 else -1.0
    sig_b = -sig_a
    da, db = sig_a * radius, sig_b * radius
    # straight-line estimate around the crossing as Newton start
    na = np.array([-ta[1], ta[0]])
    nb = np.array([-tb[1], tb[0]])
    rhs = boundary_b.position(sb0) + db * nb - boundary_a.position(sa0) - da * na
    x = np.linalg.solve(np.column_stack([ta, -tb]), rhs)
    sol = solve_offset_crossing(boundary_a, da, boundary_b, db, (sa0 + x[0], sb0 + x[1]))
    if sol is None:
        sol = solve_offset_crossing(boundary_a, da, boundary_b, db, (sa0, sb0))
    if sol is None:
        raise NoFilletExists(f"radius {radius:g} m does not fit between the boundaries")
    sa, sb = sol
    pa = boundary_a.position(sa)
    pb = boundary_b.position(sb)
    center = pa + da * boundary_a.normal(sa)
    a0 = float(np.arctan2(*(pa - center)[::-1]))
    a1 = float(np.arctan2(*(pb - center)[::-1]))
    ccw = float(_cross(pa - center, pb - center)) > 0
    return Arc(center, float(radius), a0, a1, ccw, pa, pb, float(sa), float(sb))


def tangency_residual(arc, curve, s, point):
    """Angle (rad) between the circle tangent at ``point`` and the curve tangent at ``s``."""
    radial = np.asarray(point) - arc.center
    circ_t = np.array([-radial[1], radial[0]])
    t = curve.tangent(s)
    c = abs(float(_cross(circ_t, t)))
    return float(np.arctan2(c, abs(float(circ_t @ t))))
