"""Invariant checks on written pipeline outputs."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import FormatError
from ..network.build import is_convex_cw
from .export import SCHEMA, read_obj


def _angle(u, v):
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = np.clip(u @ v / (np.linalg.norm(u) * np.linalg.norm(v)), -1.0, 1.0)
    return float(np.arccos(c))


def validate_outputs(out_dir, angle_tol=1e-5, coord_tol=2e-6):
    """Return a list of (check name, passed, detail) for an output directory.

    Coordinates are read back at 6 decimals, so tolerances here are looser
    than the in-memory ones.
    """
    out = Path(out_dir)
    try:
        doc = json.loads((out / "network.json").read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {out / 'network.json'}: {exc}") from exc
    if doc.get("schema") != SCHEMA:
        raise FormatError(f"{out / 'network.json'} is not a road network document")
    results = []

    def check(name, bad, total):
        results.append((name, not bad, f"{total - len(bad)}/{total} ok" + (f"; first failure {bad[0]}" if bad else "")))

    inters = doc["intersections"]
    check("intersection_convex_clockwise",
          [b["id"] for b in inters if not is_convex_cw(np.array(b["polygon"]), 1e-7)], len(inters))
    check("intersection_vertex_count",
          [b["id"] for b in inters if len(b["polygon"]) != 2 * b["k"] or len(b["links"]) != 2 * b["k"]],
          len(inters))
    signs = {}
    for r in doc["relations"]:
        signs.setdefault(r["intersection"], []).append(r["sign"])
    check("sign_balance",
          [b["id"] for b in inters if signs.get(b["id"], []).count("+") != b["k"]
           or signs.get(b["id"], []).count("-") != b["k"]], len(inters))
    check("seg_axis_two_links", [s["id"] for s in doc["seg_axes"] if len(s["links"]) != 2], len(doc["seg_axes"]))

    if "ilanes" in doc:
        lanes = {l["id"]: np.array(l["points"]) for l in doc["llanes"]}
        tangents = {l["id"]: (np.array(l["start_tangent"]), np.array(l["end_tangent"])) for l in doc["llanes"]}
        bad_t, bad_p = [], []
        for il in doc["ilanes"]:
            cp = np.array(il["control_points"])
            a, b = lanes[il["from"]], lanes[il["to"]]
            if np.abs(cp[0] - a[-1]).max() > coord_tol or np.abs(cp[-1] - b[0]).max() > coord_tol:
                bad_p.append(il["id"])
            if (_angle(cp[1] - cp[0], tangents[il["from"]][1]) > angle_tol
                    or _angle(cp[3] - cp[2], tangents[il["to"]][0]) > angle_tol):
                bad_t.append(il["id"])
        check("ilane_endpoints", bad_p, len(doc["ilanes"]))
        check("ilane_tangency", bad_t, len(doc["ilanes"]))
        pairs = [(il["from"], il["to"]) for il in doc["ilanes"]]
        check("ilane_unique", [] if len(set(pairs)) == len(pairs) else ["duplicate pair"], 1)

    obj = out / "roads.obj"
    if obj.exists():
        verts, faces, regions = read_obj(obj)
        names = {r[0] for r in regions}
        expected = {f"link_{l['id']}" for l in doc["links"]} | {f"intersection_{b['id']}" for b in inters}
        check("mesh_regions", sorted(expected - names),
            len(doc["links"]) + len(inters))
        vset = {tuple(v) for v in np.round(verts, 6)}
        bad = []
        for b in inters:
            for p in b["polygon"]:
                if (round(p[0], 6), round(p[1], 6), round(b["z"], 6)) not in vset:
                    bad.append(b["id"])
                    break
        check("seam_vertices_shared", bad, len(inters))
        p = verts[faces]
        area = 0.5 * ((p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
                      - (p[:, 1, 1] - p[:, 0, 1]) * (p[:, 2, 0] - p[:, 0, 0]))
        check("mesh_ccw_nondegenerate", list(np.flatnonzero(area <= 0)[:1]), len(faces))
    return results
