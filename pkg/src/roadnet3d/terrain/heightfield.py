"""Georeferenced elevation raster with bilinear sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InputError, OutOfBounds


@dataclass(frozen=True, eq=False)
class HeightField:
    """Elevation grid on an axis-aligned rectangle.

    ``grid[i, j]`` is the elevation of the cell whose center sits at
    ``origin + ((j + 0.5) * cellsize, (i + 0.5) * cellsize)``; row 0 is the
    southern edge. ``origin`` is the south-west corner of the raster.
    """

    grid: np.ndarray
    cellsize: float
    origin: tuple = (0.0, 0.0)

    def __post_init__(self):
        g = np.ascontiguousarray(self.grid, dtype=float)
        if g.ndim != 2 or min(g.shape) < 1:
            raise InputError(f"height grid must be a non-empty 2D array, got shape {g.shape}")
        if not np.all(np.isfinite(g)):
            raise InputError("height grid contains non-finite values")
        if not self.cellsize > 0:
            raise InputError(f"cell size must be positive, got {self.cellsize}")
        g.setflags(write=False)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def shape(self):
        return self.grid.shape

    @property
    def height(self):
        return self.grid.shape[0]

    @property
    def width(self):
        return self.grid.shape[1]

    @property
    def extent(self):
        """(xmin, ymin, xmax, ymax)."""
        x0, y0 = self.origin
        return x0, y0, x0 + self.width * self.cellsize, y0 + self.height * self.cellsize

    @property
    def corners(self):
        """r1..r4, counter-clockwise from the south-west corner."""
        x0, y0, x1, y1 = self.extent
        return np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])

    def cell_centers(self):
        x0, y0 = self.origin
        xs = x0 + (np.arange(self.width) + 0.5) * self.cellsize
        ys = y0 + (np.arange(self.height) + 0.5) * self.cellsize
        return np.meshgrid(xs, ys)

    def contains(self, x, y, tol=1e-9):
        x0, y0, x1, y1 = self.extent
        pad = tol * max(1.0, self.cellsize)
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        return (x >= x0 - pad) & (x <= x1 + pad) & (y >= y0 - pad) & (y <= y1 + pad)


def sample_elevation(hf: HeightField, x, y):
    """Bilinear interpolation between the four surrounding cell centers.

    Points in the outer half cell are clamped to the edge centers. Raises
    OutOfBounds for points outside the raster.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    inside = hf.contains(x, y)
    if not np.all(inside):
        bad = np.flatnonzero(~np.atleast_1d(inside))[0]
        px, py = np.atleast_1d(x)[bad], np.atleast_1d(np.broadcast_to(y, np.shape(x)))[bad]
        raise OutOfBounds(f"point ({px:.3f}, {py:.3f}) lies outside the height field {hf.extent}")
    fx = np.clip((x - hf.origin[0]) / hf.cellsize - 0.5, 0.0, hf.width - 1)
    fy = np.clip((y - hf.origin[1]) / hf.cellsize - 0.5, 0.0, hf.height - 1)
    j0 = np.minimum(np.floor(fx).astype(int), max(hf.width - 2, 0))
    i0 = np.minimum(np.floor(fy).astype(int), max(hf.height - 2, 0))
    j1 = np.minimum(j0 + 1, hf.width - 1)
    i1 = np.minimum(i0 + 1, hf.height - 1)
    tx = fx - j0
    ty = fy - i0
    g = hf.grid
    bottom = g[i0, j0] * (1 - tx) + g[i0, j1] * tx
    top = g[i1, j0] * (1 - tx) + g[i1, j1] * tx
    z = bottom * (1 - ty) + top * ty
    return float(z) if np.ndim(z) == 0 else z
