"""Deterministic writers: OBJ mesh, semantic network JSON, profile CSV."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .. import __version__
from ..errors import FormatError, RoadNetError

SCHEMA = "roadnet3d.network"
SCHEMA_VERSION = "1.0"


class ExportError(RoadNetError):
    pass


def fmt(x):
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _write(path, text):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise ExportError(f"cannot write output: {exc.strerror}", str(path)) from exc


def obj_text(mesh, mtl_name=None):
    out = ["# roadnet3d road surface"]
    if mtl_name:
        out.append(f"mtllib {mtl_name}")
    for v in mesh.vertices:
        out.append(f"v {fmt(v[0])} {fmt(v[1])} {fmt(v[2])}")
    if mesh.uv is not None:
        for t in mesh.uv:
            out.append(f"vt {fmt(t[0])} {fmt(t[1])}")
    for name, a, b in mesh.regions:
        out.append(f"o {name}")
        if mtl_name:
            out.append("usemtl road")
        for f in mesh.faces[a:b] + 1:
            if mesh.uv is not None:
                out.append("f " + " ".join(f"{j}/{j}" for j in f))
            else:
                out.append(f"f {f[0]} {f[1]} {f[2]}")
    return "\n".join(out) + "\n"


def export_obj(mesh, path, texture=None):
    """Write ``path``; with a texture a sibling ``.mtl`` referencing it is written too."""
    path = Path(path)
    mtl = None
    if texture is not None:
        mtl = path.with_suffix(".mtl").name
        _write(path.with_suffix(".mtl"),
               f"newmtl road\nKa 1.000000 1.000000 1.000000\nKd 1.000000 1.000000 1.000000\nmap_Kd {texture}\n")
    _write(path, obj_text(mesh, mtl))


def read_obj(path):
    """Vertices, faces (0-based) and region names of an OBJ written by :func:`export_obj`."""
    verts, faces, regions = [], [], []
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    for line in lines:
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(v) for v in parts[1:4]])
        elif parts[0] == "o":
            regions.append([parts[1], len(faces), len(faces)])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
            regions[-1][2] = len(faces)
    return np.array(verts).reshape(-1, 3), np.array(faces, dtype=int).reshape(-1, 3), regions


def dumps(obj, indent=1, _level=0):
    """JSON with fixed 6-decimal floats and stable layout."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.floating, np.integer, bool)) or v is None for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        return "[\n" + ",\n".join(pad + dumps(v, indent, _level + 1) for v in obj) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return fmt(float(obj))
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def network_document(net, lanes=None, elevations=None, profiles=None):
    doc = {
        "schema": SCHEMA,
        "version": SCHEMA_VERSION,
        "generator": f"roadnet3d {__version__}",
        "params": net.params,
        "roads": [{"id": r.id, "width": r.width, "design_speed": r.design_speed,
                   "source_ids": list(r.source_ids)} for r in net.roads],
        "seg_axes": [{"id": s.id, "road_id": s.road_id, "links": list(s.links), "width": s.width,
                      "s_range": list(s.s_range), "start_intersection": s.start_intersection,
                      "end_intersection": s.end_intersection, "points": s.geometry.points}
                     for s in net.seg_axes],
        "links": [{"id": l.id, "seg_axis": l.seg_axis_id, "side": l.side,
                   "from_intersection": l.from_intersection, "to_intersection": l.to_intersection,
                   "boundary": l.boundary.points, "polygon": l.polygon} for l in net.links],
        "intersections": [{"id": b.id, "k": b.k, "links": list(b.links), "polygon": b.polygon,
                           "z": elevations[b.id].z if elevations else None} for b in net.intersections],
        "relations": [{"intersection": r.intersection, "link": r.link, "sign": r.sign} for r in net.relations],
    }
    if profiles is not None:
        doc["profiles"] = [{"seg_axis": sid, "length": p.length, "max_curvature": p.max_curvature,
                            "max_slope": p.max_slope, "residual": p.residual,
                            "knots": p.spline.knots, "coefficients": p.spline.coefficients}
                           for sid, p in sorted(profiles.items())]
    if lanes is not None:
        doc["llanes"] = [{"id": l.id, "link": l.link_id, "index": l.index,
                          "relations": [{"intersection": i, "sign": s} for i, s in l.relations],
                          "start_tangent": l.start_tangent(), "end_tangent": l.end_tangent(),
                          "points": l.centerline} for l in lanes.llanes]
        doc["ilanes"] = [{"id": il.id, "intersection": il.intersection_id, "from": il.from_llane,
                          "to": il.to_llane, "control_points": il.control_points,
                          "points": il.sample(16)} for il in lanes.ilanes]
        doc["connectors"] = [{"from_link": c.from_link, "to_link": c.to_link, "witness": c.witness}
                             for c in lanes.connectors]
    doc["warnings"] = net.warnings
    return doc


def export_semantic_json(doc, path):
    _write(path, dumps(doc) + "\n")


def export_profile_csv(profile, path, step=1.0):
    n = max(1, int(math.ceil(profile.length / step - 1e-9)))
    s = np.linspace(0.0, profile.length, n + 1)
    h = profile(s)
    k = profile.curvature(s)
    g = profile.slope(s)
    rows = ["s,h,kappa,slope"] + [f"{fmt(a)},{fmt(b)},{fmt(c)},{fmt(d)}" for a, b, c, d in zip(s, h, k, g)]
    _write(path, "\n".join(rows) + "\n")


def write_report(report, path):
    _write(path, json.dumps(report, indent=2, sort_keys=True, default=str) + "\n")
