"""End-to-end pipeline: centerlines and terrain in, 3D road network out."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import InputError, RoadNetError
from ..lanes import build_lane_graph
from ..network import build_network, load_centerlines, smooth_centerlines
from ..network.types import CenterlineSet
from ..profile import fit_profile, flatten_intersection, sample_control_vectors, stitch_junctions
from ..synthetic import flat_dem, network_extent
from ..terrain import load_heightfield, segment_elevation
from .config import PipelineConfig
from .export import export_obj, export_profile_csv, export_semantic_json, network_document, write_report
from .mesh import build_mesh


@dataclass(eq=False)
class PipelineResult:
    network: object = None
    heightfield: object = None
    mask: object = None
    elevations: dict = None
    profiles: dict = None
    lanes: object = None
    mesh: object = None
    report: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)


@contextmanager
def _stage(name, timings):
    t0 = time.perf_counter()
    try:
        yield
    except RoadNetError as exc:
        exc.stage = name
        raise
    finally:
        timings[name] = time.perf_counter() - t0


def _map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def compute_network(cfg: PipelineConfig, centerlines=None, timings=None):
    timings = {} if timings is None else timings
    with _stage("load_centerlines", timings):
        if centerlines is None:
            cl = load_centerlines(cfg.centerlines, cfg.u, cfg.i, cfg.l_dis)
        else:
            cl = CenterlineSet(list(centerlines.roads), u=cfg.u, i=cfg.i, l_dis=cfg.l_dis)
    with _stage("smooth_centerlines", timings):
        cl = smooth_centerlines(cl, cfg.smooth_spacing)
    with _stage("build_network", timings):
        net = build_network(cl, cfg.tolerances)
    return net


def compute_profiles(cfg, net, hf, timings):
    with _stage("flatten_intersection", timings):
        elevations = {b.id: flatten_intersection(b, hf) for b in net.intersections}

    def fit(sa):
        cv = sample_control_vectors(sa.curve, hf, cfg.ds, cfg.slope_max, cfg.dkappa_max, source=sa.id)
        return fit_profile(cv, cfg.kappa_max, cfg.slope_max, cfg.tolerances.fit_tolerance,
                           cfg.tolerances.max_pieces, seg_axis_id=sa.id)

    with _stage("fit_profile", timings):
        profiles = dict(zip((sa.id for sa in net.seg_axes), _map(fit, net.seg_axes, cfg.threads)))
    with _stage("stitch_junctions", timings):
        profiles = stitch_junctions(net, profiles, elevations)
    return elevations, profiles


def run_pipeline(cfg: PipelineConfig, centerlines=None, heightfield=None, write=True, lanes=True):
    """Run every stage; writes outputs into ``cfg.out`` when ``write`` is set."""
    timings = {}
    res = PipelineResult()
    with _stage("check_inputs", timings):
        if centerlines is None:
            if cfg.centerlines is None:
                raise InputError("no centerline input given")
            if not Path(cfg.centerlines).exists():
                raise InputError(f"centerline file {cfg.centerlines} does not exist")
        if heightfield is None:
            if cfg.heightfield is None and cfg.flat_elevation is None:
                raise InputError("no height field given (set flat_elevation for constant terrain)")
            if cfg.heightfield is not None and not Path(cfg.heightfield).exists():
                raise InputError(f"height field {cfg.heightfield} does not exist")
    net = res.network = compute_network(cfg, centerlines, timings)
    with _stage("load_heightfield", timings):
        if heightfield is not None:
            hf = heightfield
        elif cfg.heightfield is not None:
            hf = load_heightfield(cfg.heightfield)
        else:
            hf = flat_dem(network_extent(net, margin=50.0), cfg.flat_elevation, 5.0)
    res.heightfield = hf
    with _stage("segment_elevation", timings):
        res.mask = segment_elevation(hf, net)
    res.elevations, res.profiles = compute_profiles(cfg, net, hf, timings)
    if lanes:
        with _stage("generate_lanes", timings):
            res.lanes = build_lane_graph(net, res.profiles, res.elevations, cfg.lane_width,
                                         cfg.lanes_per_link, cfg.tolerances.sample_step)
    with _stage("build_mesh", timings):
        res.mesh = build_mesh(net, res.profiles, res.elevations, cfg.mesh_step, cfg.ortho_georef)
    if write:
        with _stage("export", timings):
            res.outputs = write_outputs(cfg, res)
    res.report = make_report(cfg, res, timings)
    if write:
        write_report(res.report, Path(cfg.out) / "report.json")
    return res


def write_outputs(cfg, res):
    out = Path(cfg.out)
    doc = network_document(res.network, res.lanes, res.elevations, res.profiles)
    paths = {"network": out / "network.json", "obj": out / "roads.obj", "report": out / "report.json"}
    export_semantic_json(doc, paths["network"])
    export_obj(res.mesh, paths["obj"], cfg.texture)
    if cfg.texture:
        paths["mtl"] = out / "roads.mtl"
    for sid, prof in sorted(res.profiles.items()):
        export_profile_csv(prof, out / "profiles" / f"{sid}.csv")
    paths["profiles"] = out / "profiles"
    return {k: str(v) for k, v in paths.items()}


def make_report(cfg, res, timings):
    net = res.network
    profs = list(res.profiles.values()) if res.profiles else []
    kmax = max((p.max_curvature for p in profs), default=0.0)
    gmax = max((p.max_slope for p in profs), default=0.0)
    warnings = list(net.warnings) + (res.mask.warnings if res.mask is not None else [])
    counts = {
        "roads": len(net.roads), "seg_axes": len(net.seg_axes), "links": len(net.links),
        "intersections": len(net.intersections),
    }
    if res.lanes is not None:
        counts.update(llanes=len(res.lanes.llanes), ilanes=len(res.lanes.ilanes),
                      connectors=len(res.lanes.connectors))
    if res.mask is not None:
        counts.update(road_cells=res.mask.road_cells, non_road_cells=res.mask.non_road_cells,
                      raster_cells=int(np.prod(res.mask.shape)))
    if res.mesh is not None:
        counts.update(mesh_vertices=len(res.mesh.vertices), mesh_faces=len(res.mesh.faces))
    return {
        "status": "ok",
        "counts": counts,
        "certificates": {
            "max_curvature": kmax, "kappa_max": cfg.kappa_max,
            "max_slope": gmax, "slope_max": cfg.slope_max,
            "pass": bool(kmax <= cfg.kappa_max * (1 + 1e-6) and gmax <= cfg.slope_max * (1 + 1e-6)),
        },
        "warnings": warnings,
        "timings": timings,
        "total_time": sum(timings.values()),
        "config": {k: v for k, v in cfg.as_dict().items()},
    }
