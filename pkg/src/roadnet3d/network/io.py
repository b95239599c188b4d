"""GeoJSON centerline input."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import FormatError, InputError
from .types import CenterlineSet, Road


def _lines(geom):
    kind = geom.get("type")
    if kind == "LineString":
        return [geom["coordinates"]]
    if kind == "MultiLineString":
        return list(geom["coordinates"])
    return []


def roads_from_geojson(data, default_speed=None):
    if data.get("type") != "FeatureCollection":
        raise FormatError("centerlines must be a GeoJSON FeatureCollection")
    roads = []
    for n, feat in enumerate(data.get("features", [])):
        props = feat.get("properties") or {}
        fid = str(props.get("id", feat.get("id", n)))
        lines = _lines(feat.get("geometry") or {})
        if not lines:
            continue
        if "width" not in props:
            raise InputError("feature has no 'width' property", fid)
        speed = props.get("design_speed", default_speed)
        if speed is None:
            raise InputError("feature has no 'design_speed' property", fid)
        for m, coords in enumerate(lines):
            pts = np.asarray(coords, dtype=float)[:, :2]
            rid = fid if len(lines) == 1 else f"{fid}.{m}"
            roads.append(Road(rid, pts, float(props["width"]), float(speed),
                              props.get("lanes_per_link"), props.get("lane_width")))
    if not roads:
        raise InputError("no roads")
    pts = np.vstack([r.axis.points for r in roads])
    if np.all(np.abs(pts[:, 0]) <= 180) and np.all(np.abs(pts[:, 1]) <= 90):
        raise InputError("coordinates look geographic (degrees); reproject to a metric CRS first")
    return roads


def load_centerlines(path, u=0.10, i=0.05, l_dis=30.0) -> CenterlineSet:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc.msg}") from exc
    return CenterlineSet(roads_from_geojson(data), u=u, i=i, l_dis=l_dis)


def centerlines_to_geojson(cl):
    return {
        "type": "FeatureCollection",
        "features": [
            {"type": "Feature",
             "properties": {"id": r.id, "width": r.width, "design_speed": r.design_speed,
                            **({"lanes_per_link": r.lanes_per_link} if r.lanes_per_link else {}),
                            **({"lane_width": r.lane_width} if r.lane_width else {})},
             "geometry": {"type": "LineString", "coordinates": r.axis.points.tolist()}}
            for r in cl.roads
        ],
    }
