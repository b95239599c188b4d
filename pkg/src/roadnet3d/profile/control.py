"""Control vectors: terrain samples along a road axis in the (s, h) plane."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidParams
from ..terrain.heightfield import sample_elevation


@dataclass(eq=False)
class ControlVectorSet:
    s: np.ndarray
    h: np.ndarray
    ds: float
    source: object = None
    dropped: tuple = ()  # abscissae of rejected candidates
    slope_max: float = None  # admission rule used to build the set
    dkappa_max: float = None

    def __len__(self):
        return len(self.s)

    @property
    def n_total(self):
        return len(self.s) - 1

    def as_array(self):
        return np.column_stack([self.s, self.h])


def menger_curvature(a, b, c):
    """Signed curvature of the circle through three points (0 if collinear)."""
    ab, bc, ca = np.subtract(b, a), np.subtract(c, b), np.subtract(a, c)
    cross = ab[0] * bc[1] - ab[1] * bc[0]
    den = np.hypot(*ab) * np.hypot(*bc) * np.hypot(*ca)
    return 0.0 if den == 0 else 2.0 * cross / den


def select_control_vectors(s, h, slope_max=0.08, dkappa_max=0.1):
    """Indices of the samples kept by the slope and curvature-difference rules.

    A candidate is compared with the last retained sample: it is dropped if
    the implied slope exceeds ``slope_max`` or if the discrete curvature at
    the new point differs from the last retained one by more than
    ``dkappa_max``. First and last samples are always kept.
    """
    n = len(s)
    keep = [0]
    kappa_last = 0.0
    for j in range(1, n - 1):
        i = keep[-1]
        slope = abs(h[j] - h[i]) / (s[j] - s[i])
        if slope_max is not None and slope > slope_max:
            continue
        kappa = menger_curvature((s[keep[-2]], h[keep[-2]]), (s[i], h[i]), (s[j], h[j])) if len(keep) > 1 else 0.0
        if abs(kappa - kappa_last) > dkappa_max:
            continue
        keep.append(j)
        kappa_last = kappa
    if n > 1:
        keep.append(n - 1)
    return np.array(keep)


def sample_control_vectors(axis, hf, ds=5.0, slope_max=0.08, dkappa_max=0.1, source=None):
    """Sample terrain at n*ds along ``axis`` (plus its end) and filter the samples."""
    if not ds > 0:
        raise InvalidParams(f"control vector spacing must be positive, got {ds}", source)
    length = float(axis.length)
    n = int(np.floor(length / ds + 1e-9))
    s = np.arange(n + 1) * ds
    if length - s[-1] > 1e-6 * ds:
        s = np.append(s, length)
    else:
        s[-1] = length
    if len(s) < 2:
        s = np.array([0.0, length])
    xy = axis.position(s)
    h = np.asarray(sample_elevation(hf, xy[:, 0], xy[:, 1]), dtype=float)
    keep = select_control_vectors(s, h, slope_max, dkappa_max)
    dropped = tuple(float(v) for v in np.delete(s, keep))
    return ControlVectorSet(s[keep], h[keep], ds, source, dropped, slope_max, dkappa_max)


def pin_control_vectors(cv, start=None, end=None):
    """Replace end ordinates by pinned values and re-run the admission rule.

    The forward pass starts from a pinned start, a backward pass from a pinned
    end, so samples the road cannot reach from the pinned value are dropped.
    """
    s = cv.s.copy()
    h = cv.h.copy()
    if start is not None:
        h[0] = start
    if end is not None:
        h[-1] = end
    slope_max = cv.slope_max
    dk = cv.dkappa_max if cv.dkappa_max is not None else np.inf
    keep = np.arange(len(s))
    if start is not None:
        keep = keep[select_control_vectors(s[keep], h[keep], slope_max, dk)]
    if end is not None:
        back = select_control_vectors(-s[keep][::-1], h[keep][::-1], slope_max, dk)
        keep = keep[::-1][back][::-1]
    dropped = tuple(sorted(set(cv.dropped) | {float(v) for v in np.delete(s, keep)}))
    return ControlVectorSet(s[keep], h[keep], cv.ds, cv.source, dropped, cv.slope_max, cv.dkappa_max)
