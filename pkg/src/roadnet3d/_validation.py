"""Input checks in the spirit of sklearn.utils.validation."""

import numpy as np

from .errors import InputError


def check_samples(X, y):
    """Return 1-D float arrays (s, h); s must be finite and strictly increasing."""
    s = np.asarray(X, dtype=float)
    if s.ndim == 2 and s.shape[1] == 1:
        s = s[:, 0]
    h = np.asarray(y, dtype=float).reshape(-1)
    if s.ndim != 1 or s.shape != h.shape:
        raise InputError(f"expected matching 1-D abscissae/ordinates, got {s.shape} and {h.shape}")
    if len(s) < 2:
        raise InputError("need at least 2 samples")
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(h))):
        raise InputError("samples must be finite")
    if np.any(np.diff(s) <= 0):
        raise InputError("abscissae must be strictly increasing")
    return s, h


def check_points(points, dim=2, name="points"):
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != dim:
        raise InputError(f"{name} must have shape (n, {dim}), got {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise InputError(f"{name} contain NaN or Inf")
    return pts


def check_positive(value, name):
    value = float(value)
    if not np.isfinite(value) or value <= 0:
        raise InputError(f"{name} must be positive, got {value}")
    return value
