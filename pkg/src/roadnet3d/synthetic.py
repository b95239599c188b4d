"""Synthetic centerline and terrain fixtures for tests and benchmarks."""

from __future__ import annotations

import math

import numpy as np

from .network.types import CenterlineSet, Road
from .terrain.heightfield import HeightField


def star_junction(angles_deg, length=200.0, widths=8.0, speed=20.0, center=(0.0, 0.0), inbound=None):
    """Roads radiating from ``center``; road k points in direction angles_deg[k].

    ``inbound[k]`` reverses road k so that it ends at the center.
    """
    widths = np.broadcast_to(np.asarray(widths, dtype=float), (len(angles_deg),))
    roads = []
    c = np.asarray(center, dtype=float)
    for k, a in enumerate(angles_deg):
        tip = c + length * np.array([math.cos(math.radians(a)), math.sin(math.radians(a))])
        pts = np.array([c, tip])
        if inbound is not None and inbound[k]:
            pts = pts[::-1]
        roads.append(Road(f"r{k}", pts, float(widths[k]), speed))
    return CenterlineSet(roads)


def cross(length=200.0, width=8.0, speed=20.0):
    # two roads enter, two leave: exercises both arm orientations
    return star_junction([0, 90, 180, 270], length, width, speed, inbound=[False, False, True, True])


def random_junction(rng, length=400.0, speed=20.0, min_sep=20.0):
    """3 to 6 arms, pairwise at least ``min_sep`` degrees apart, widths 6 to 16 m."""
    k = int(rng.integers(3, 7))
    while True:
        ang = np.sort(rng.uniform(0.0, 360.0, k))
        gaps = np.diff(np.append(ang, ang[0] + 360.0))
        if gaps.min() >= min_sep:
            break
    widths = rng.uniform(6.0, 16.0, k)
    inbound = rng.random(k) < 0.5
    return star_junction(ang.tolist(), length, widths, speed, inbound=inbound.tolist())


def grid_network(nx, ny, spacing=200.0, width=8.0, speed=30.0, jitter=0.0, seed=0):
    """Street grid of nx by ny nodes; every grid edge is one road."""
    rng = np.random.default_rng(seed)
    xy = np.stack(np.meshgrid(np.arange(nx) * spacing, np.arange(ny) * spacing), axis=-1).astype(float)
    if jitter:
        xy += rng.uniform(-jitter, jitter, xy.shape)
    roads = []
    for j in range(ny):
        for i in range(nx):
            if i + 1 < nx:
                roads.append(Road(f"h{j}_{i}", np.array([xy[j, i], xy[j, i + 1]]), width, speed))
            if j + 1 < ny:
                roads.append(Road(f"v{j}_{i}", np.array([xy[j, i], xy[j + 1, i]]), width, speed))
    return CenterlineSet(roads)


def grid_for_links(n_links):
    """Grid whose Link count is close to ``n_links`` (2 Links per road)."""
    best = None
    for nx in range(2, 64):
        ny = nx + 1
        links = 2 * ((nx - 1) * ny + nx * (ny - 1))
        if best is None or abs(links - n_links) < abs(best[2] - n_links):
            best = (nx, ny, links)
    return grid_network(best[0], best[1])


def flat_dem(extent, z=0.0, cellsize=5.0):
    x0, y0, x1, y1 = extent
    w = int(math.ceil((x1 - x0) / cellsize))
    h = int(math.ceil((y1 - y0) / cellsize))
    return HeightField(np.full((h, w), float(z)), cellsize, (x0, y0))


def ramp_dem(extent, a=0.01, b=0.0, c=0.0, cellsize=5.0):
    hf = flat_dem(extent, 0.0, cellsize)
    x, y = hf.cell_centers()
    return HeightField(a * x + b * y + c, cellsize, hf.origin)


def ridge_dem(extent=(-50.0, -100.0, 550.0, 100.0), peak=60.0, x_peak=250.0, sigma=40.0,
              base=100.0, cellsize=2.0, seed=None):
    """Gaussian ridge running north-south, ``peak`` m above a flat base."""
    hf = flat_dem(extent, 0.0, cellsize)
    x, y = hf.cell_centers()
    z = base + peak * np.exp(-0.5 * ((x - x_peak) / sigma) ** 2)
    if seed is not None:
        z = z + np.random.default_rng(seed).normal(0.0, 0.05, z.shape)
    return HeightField(z, cellsize, hf.origin)


def ridge_road(length=500.0, width=8.0, speed=40.0):
    return CenterlineSet([Road("ridge", np.array([[0.0, 0.0], [length, 0.0]]), width, speed)])


def network_extent(cl, margin=50.0):
    pts = np.vstack([r.axis.points for r in cl.roads])
    lo = pts.min(axis=0) - margin
    hi = pts.max(axis=0) + margin
    return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])
