"""Road region segmentation of the raster."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import shapely

from .heightfield import HeightField

NON_ROAD = -1


@dataclass(eq=False)
class RoadMask:
    """Per-cell region labels.

    ``kind`` is 0 for non-road, 1 for Link, 2 for Intersection and ``region``
    holds the Link or Intersection id (-1 off road).
    """

    kind: np.ndarray
    region: np.ndarray
    warnings: list = field(default_factory=list)

    LINK = 1
    INTERSECTION = 2

    @property
    def shape(self):
        return self.kind.shape

    @property
    def road_cells(self):
        return int(np.count_nonzero(self.kind))

    @property
    def non_road_cells(self):
        return int(self.kind.size - np.count_nonzero(self.kind))

    def label(self, i, j):
        k = int(self.kind[i, j])
        if k == 0:
            return None
        return ("link" if k == self.LINK else "intersection", int(self.region[i, j]))


def _bbox_cells(hf, poly):
    x0, y0 = hf.origin
    c = hf.cellsize
    lo = poly.min(axis=0)
    hi = poly.max(axis=0)
    j0 = max(int(np.floor((lo[0] - x0) / c - 0.5)), 0)
    j1 = min(int(np.ceil((hi[0] - x0) / c - 0.5)), hf.width - 1)
    i0 = max(int(np.floor((lo[1] - y0) / c - 0.5)), 0)
    i1 = min(int(np.ceil((hi[1] - y0) / c - 0.5)), hf.height - 1)
    return i0, i1, j0, j1


def segment_elevation(hf: HeightField, net) -> RoadMask:
    """Label every cell whose center lies in a Link or Intersection polygon.

    Intersections take precedence over Links and a lower id wins inside each
    class; boundary points count as inside.
    """
    kind = np.zeros(hf.shape, dtype=np.int8)
    region = np.full(hf.shape, NON_ROAD, dtype=np.int64)
    warnings = []
    ext = shapely.box(*hf.extent)
    x0, y0 = hf.origin
    c = hf.cellsize
    layers = [(RoadMask.INTERSECTION, [(b.id, b.polygon) for b in net.intersections]),
              (RoadMask.LINK, [(l.id, l.polygon) for l in net.links])]
    for code, regions in layers:
        for rid, poly in sorted(regions, key=lambda r: r[0]):
            poly = np.asarray(poly, dtype=float)
            geom = shapely.Polygon(poly)
            if not ext.contains(geom):
                name = "intersection" if code == RoadMask.INTERSECTION else "link"
                warnings.append({"stage": "segment_elevation", "entity": f"{name}_{rid}",
                                 "message": "region extends outside the height field and is clipped"})
            i0, i1, j0, j1 = _bbox_cells(hf, poly)
            if i0 > i1 or j0 > j1:
                continue
            ii, jj = np.mgrid[i0:i1 + 1, j0:j1 + 1]
            free = kind[ii, jj] == 0
            if not free.any():
                continue
            ii, jj = ii[free], jj[free]
            xs = x0 + (jj + 0.5) * c
            ys = y0 + (ii + 0.5) * c
            shapely.prepare(geom)
            hit = shapely.intersects_xy(geom, xs, ys)
            kind[ii[hit], jj[hit]] = code
            region[ii[hit], jj[hit]] = rid
    return RoadMask(kind, region, warnings)
