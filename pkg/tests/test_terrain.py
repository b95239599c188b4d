import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadnet3d.errors import FormatError, MissingGeoreference, OutOfBounds
from roadnet3d.network import build_network
from roadnet3d.network.types import Link, RoadNetwork2D
from roadnet3d.geom import Polyline
from roadnet3d.terrain import (
    HeightField,
    RoadMask,
    load_heightfield,
    sample_elevation,
    segment_elevation,
    write_asc,
    write_pgm,
)

from fixtures import scene
from oracles import point_in_polygon


def test_load_asc_two_by_two(tmp_path):
    p = tmp_path / "g.asc"
    p.write_text("ncols 2\nnrows 2\nxllcorner 100\nyllcorner 200\ncellsize 10\nNODATA_value -9999\n1 2\n3 4\n")
    hf = load_heightfield(p)
    assert hf.origin == (100.0, 200.0) and hf.cellsize == 10.0
    # first file row is the northern one
    assert sample_elevation(hf, 105, 215) == 1.0
    assert sample_elevation(hf, 115, 215) == 2.0
    assert sample_elevation(hf, 105, 205) == 3.0
    assert sample_elevation(hf, 115, 205) == 4.0


def test_asc_center_header_and_nodata(tmp_path):
    p = tmp_path / "g.asc"
    p.write_text("ncols 3\nnrows 1\nxllcenter 5\nyllcenter 5\ncellsize 10\nnodata_value -1\n7 -1 9\n")
    hf = load_heightfield(p)
    assert hf.origin == (0.0, 0.0)
    assert hf.grid[0, 1] in (7.0, 9.0)


def test_asc_round_trip(tmp_path):
    hf = HeightField(np.arange(12.0).reshape(3, 4) * 0.25, 2.5, (10.0, -5.0))
    write_asc(hf, tmp_path / "r.asc")
    back = load_heightfield(tmp_path / "r.asc")
    np.testing.assert_allclose(back.grid, hf.grid)
    assert back.origin == hf.origin


def test_asc_errors(tmp_path):
    p = tmp_path / "bad.asc"
    p.write_text("ncols 2\nnrows 2\ncellsize 1\n1 2 3 4\n")
    with pytest.raises(MissingGeoreference):
        load_heightfield(p)
    p.write_text("ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n1 2 3\n")
    with pytest.raises(FormatError):
        load_heightfield(p)
    with pytest.raises(FormatError):
        load_heightfield(tmp_path / "missing.asc")
    with pytest.raises(FormatError):
        load_heightfield(p, format="tif")


def test_constant_grid():
    hf = HeightField(np.full((5, 7), 12.5), 1.0)
    assert hf.grid.min() == hf.grid.max() == 12.5


def test_pgm_scale(tmp_path):
    from PIL import Image

    pix = np.array([[0, 10, 20], [30, 40, 255]], dtype=np.uint8)
    Image.fromarray(pix, mode="L").save(tmp_path / "d.pgm")
    (tmp_path / "d.geo.json").write_text(json.dumps({"origin": [0, 0], "cellsize": 2, "scale": 0.5, "offset": 0}))
    hf = load_heightfield(tmp_path / "d.pgm")
    # south-up storage: the last image row is row 0
    np.testing.assert_allclose(hf.grid, pix[::-1] * 0.5)


def test_pgm_round_trip_and_missing_sidecar(tmp_path):
    hf = HeightField(np.array([[100.0, 300.5], [250.0, 1000.0]]), 5.0, (1.0, 2.0))
    write_pgm(hf, tmp_path / "w.pgm", scale=0.5, offset=50.0)
    np.testing.assert_allclose(load_heightfield(tmp_path / "w.pgm").grid, hf.grid)
    (tmp_path / "w.geo.json").unlink()
    with pytest.raises(MissingGeoreference):
        load_heightfield(tmp_path / "w.pgm")


def test_sample_midpoint_and_bounds():
    hf = HeightField(np.array([[10.0, 20.0]]), 1.0)
    assert sample_elevation(hf, 1.0, 0.5) == pytest.approx(15.0)
    with pytest.raises(OutOfBounds):
        sample_elevation(hf, 3.0, 0.5)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1, 1), st.floats(-1, 1), st.floats(-100, 100))
def test_bilinear_reproduces_planes(a, b, c):
    hf = HeightField(np.zeros((6, 9)), 3.0, (100.0, 50.0))
    x, y = hf.cell_centers()
    hf = HeightField(a * x + b * y + c, 3.0, (100.0, 50.0))
    rng = np.random.default_rng(0)
    # stay within the cell-center hull where interpolation is not clamped
    px = rng.uniform(101.5, 100 + 27 - 1.5, 50)
    py = rng.uniform(51.5, 50 + 18 - 1.5, 50)
    np.testing.assert_allclose(sample_elevation(hf, px, py), a * px + b * py + c, atol=1e-9)


def test_sampling_continuous_across_cell_edges():
    rng = np.random.default_rng(1)
    hf = HeightField(rng.normal(size=(8, 8)), 2.0)
    for k in range(1, 8):
        edge = 2.0 * k
        y = rng.uniform(0, 16)
        lo = sample_elevation(hf, edge - 1e-12, y)
        hi = sample_elevation(hf, edge + 1e-12, y)
        assert abs(lo - hi) < 1e-9


def _rect_net(x0, x1, y0, y1):
    poly = np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float)
    link = Link(0, 0, "left", Polyline(poly[:2]), poly)
    return RoadNetwork2D([], [], [], [link], [], [])


def test_empty_network_mask():
    hf = HeightField(np.zeros((4, 5)), 1.0)
    mask = segment_elevation(hf, RoadNetwork2D([], [], [], [], [], []))
    assert mask.road_cells == 0 and mask.non_road_cells == 20


def test_rectangle_marks_exact_cells():
    hf = HeightField(np.zeros((10, 10)), 1.0)
    # covers cell centers with column 2..5 and row 3..4
    mask = segment_elevation(hf, _rect_net(2.2, 5.8, 3.2, 4.8))
    rows, cols = np.nonzero(mask.kind)
    assert set(zip(rows, cols)) == {(r, c) for r in (3, 4) for c in range(2, 6)}
    assert mask.label(3, 2) == ("link", 0)


def test_clipped_region_warns():
    hf = HeightField(np.zeros((4, 4)), 1.0)
    mask = segment_elevation(hf, _rect_net(-2, 2, -2, 2))
    assert mask.warnings and mask.warnings[0]["entity"] == "link_0"
    assert mask.road_cells + mask.non_road_cells == 16


@pytest.mark.parametrize("name", ["cross", "curved", "star5"])
def test_mask_agrees_with_ray_casting(name):
    cl, dem = scene(name)
    net = build_network(cl)
    mask = segment_elevation(dem, net)
    assert mask.road_cells + mask.non_road_cells == dem.width * dem.height
    x, y = dem.cell_centers()
    rng = np.random.default_rng(7)
    road = np.argwhere(mask.kind > 0)
    cells = road[rng.choice(len(road), min(500, len(road)), replace=False)]
    cells = np.vstack([cells, rng.integers(0, [dem.height, dem.width], (1000, 2))])
    polys = {("link", l.id): l.polygon for l in net.links}
    polys.update({("intersection", b.id): b.polygon for b in net.intersections})
    for i, j in cells:
        lab = mask.label(i, j)
        px, py = x[i, j], y[i, j]
        if lab is None:
            assert not any(point_in_polygon(px, py, p) for p in polys.values())
        else:
            assert point_in_polygon(px, py, polys[lab])
            if lab[0] == "link":  # intersections take precedence
                assert not any(point_in_polygon(px, py, b.polygon) for b in net.intersections)
