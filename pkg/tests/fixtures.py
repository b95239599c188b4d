"""Named scenes shared by module and acceptance tests."""

import functools

import numpy as np

from roadnet3d.network.types import CenterlineSet, Road
from roadnet3d.synthetic import (
    cross,
    grid_network,
    network_extent,
    ramp_dem,
    ridge_dem,
    ridge_road,
    star_junction,
)
from roadnet3d.terrain import HeightField


def curved_junction():
    t = np.linspace(0.0, 1.0, 40)
    bend = np.column_stack([-220 + 220 * t, 60 * (1 - t) ** 2])
    roads = [
        Road("bend", bend, 10.0, 25.0),
        Road("east", np.array([[0.0, 0.0], [180.0, 20.0]]), 8.0, 25.0),
        Road("south", np.array([[0.0, -200.0], [-10.0, -100.0], [0.0, 0.0]]), 12.0, 25.0),
    ]
    return CenterlineSet(roads)


def hilly(cl, cellsize=4.0):
    base = ramp_dem(network_extent(cl, 60.0), 0.01, -0.006, 30.0, cellsize)
    x, y = base.cell_centers()
    z = base.grid + 3.0 * np.sin(x / 90.0) * np.cos(y / 120.0)
    return HeightField(z, cellsize, base.origin)


SCENES = {
    "cross": lambda: cross(),
    "y": lambda: star_junction([90, 210, 330]),
    "t": lambda: star_junction([0, 90, 180], widths=[8, 10, 8], inbound=[True, False, False]),
    "star5": lambda: star_junction([10, 80, 150, 220, 290], widths=[8, 10, 12, 8, 14], speed=25.0),
    "curved": curved_junction,
    "grid": lambda: grid_network(3, 3, spacing=180.0),
    "ridge": lambda: ridge_road(),
}


@functools.lru_cache(maxsize=None)
def scene(name):
    cl = SCENES[name]()
    dem = ridge_dem() if name == "ridge" else hilly(cl)
    return cl, dem


@functools.lru_cache(maxsize=None)
def pipeline_result(name):
    import tempfile

    from roadnet3d.pipeline import PipelineConfig, run_pipeline

    cl, dem = scene(name)
    out = tempfile.mkdtemp(prefix=f"rn3d_{name}_")
    return run_pipeline(PipelineConfig(out=out), centerlines=cl, heightfield=dem)
