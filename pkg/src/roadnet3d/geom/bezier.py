from dataclasses import dataclass

import numpy as np

from ..errors import DegenerateSpan


@dataclass(frozen=True, eq=False)
class CubicBezier:
    control_points: np.ndarray  # (4, dim)

    def point(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        p0, p1, p2, p3 = self.control_points
        mt = 1.0 - t
        return mt**3 * p0 + 3 * mt**2 * t * p1 + 3 * mt * t**2 * p2 + t**3 * p3

    def derivative(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        p0, p1, p2, p3 = self.control_points
        mt = 1.0 - t
        return 3 * mt**2 * (p1 - p0) + 6 * mt * t * (p2 - p1) + 3 * t**2 * (p3 - p2)

    def second_derivative(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        p0, p1, p2, p3 = self.control_points
        return 6 * (1.0 - t) * (p2 - 2 * p1 + p0) + 6 * t * (p3 - 2 * p2 + p1)

    def curvature(self, t):
        d1 = self.derivative(t)
        d2 = self.second_derivative(t)
        if d1.shape[-1] == 2:
            d1 = np.concatenate([d1, np.zeros(d1.shape[:-1] + (1,))], axis=-1)
            d2 = np.concatenate([d2, np.zeros(d2.shape[:-1] + (1,))], axis=-1)
        return np.linalg.norm(np.cross(d1, d2), axis=-1) / np.linalg.norm(d1, axis=-1) ** 3

    def sample(self, n=16):
        return self.point(np.linspace(0.0, 1.0, n))


def cubic_bezier_from_tangents(p0, t0, p1, t1, handle_scale=1.0 / 3.0):
    """Cubic Bezier leaving ``p0`` along ``t0`` and arriving at ``p1`` along ``t1``.

    Handles have length ``handle_scale * |p1 - p0|``.
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    t0 = np.asarray(t0, dtype=float)
    t1 = np.asarray(t1, dtype=float)
    chord = float(np.linalg.norm(p1 - p0))
    if chord < 1e-6:
        raise DegenerateSpan(f"bezier endpoints only {chord:.3g} m apart")
    t0 = t0 / np.linalg.norm(t0)
    t1 = t1 / np.linalg.norm(t1)
    lam = handle_scale * chord
    return CubicBezier(np.array([p0, p0 + lam * t0, p1 - lam * t1, p1]))
