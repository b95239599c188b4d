"""Command line interface: ``roadnet3d build|network|profile|validate|bench``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from ..errors import InfeasibleFit, InputError, RoadNetError
from ..network.types import CenterlineSet
from .config import PipelineConfig
from .export import ExportError, export_profile_csv, export_semantic_json, network_document, write_report
from .run import compute_network, compute_profiles, run_pipeline
from .validate import validate_outputs

log = logging.getLogger("roadnet3d")

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_IO = 0, 1, 2, 3

_OVERRIDES = [
    ("--l-dis", "l_dis", float, "intersection size threshold (m)"),
    ("--u", "u", float, "side-way force coefficient"),
    ("--i", "i", float, "superelevation"),
    ("--ds", "ds", float, "control vector spacing (m)"),
    ("--slope-max", "slope_max", float, "largest profile grade"),
    ("--kappa-max", "kappa_max", float, "largest profile curvature (1/m)"),
    ("--lane-width", "lane_width", float, "lane width (m)"),
    ("--lanes-per-link", "lanes_per_link", int, "lanes per direction"),
    ("--dp-epsilon", "dp_epsilon", float, "Douglas-Peucker tolerance (m)"),
    ("--mesh-step", "mesh_step", float, "mesh sampling step (m)"),
    ("--flat-elevation", "flat_elevation", float, "constant terrain height when no DEM is given"),
]


def _common(p, inputs=True):
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output directory")
    p.add_argument("--threads", type=int, help="worker threads")
    if inputs:
        p.add_argument("--centerlines", help="GeoJSON centerlines")
        p.add_argument("--heightfield", help=".asc or .pgm height field")
        p.add_argument("--texture", help="ortho image passed to the OBJ material")
        p.add_argument("--ortho-georef", type=float, nargs=4, metavar=("X0", "Y0", "W", "H"))
        for flag, dest, typ, text in _OVERRIDES:
            p.add_argument(flag, dest=dest, type=typ, help=text)
    p.add_argument("-v", "--verbose", action="store_true")


def make_parser():
    parser = argparse.ArgumentParser(prog="roadnet3d", description="3D road networks from centerlines and a DEM")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("build", help="full pipeline"))
    _common(sub.add_parser("network", help="2D semantic network only"))
    _common(sub.add_parser("profile", help="elevation stage only, writes profile CSVs"))
    v = sub.add_parser("validate", help="check invariants of existing outputs")
    v.add_argument("out_dir", nargs="?", help="directory holding network.json and roads.obj")
    _common(v, inputs=False)
    b = sub.add_parser("bench", help="time the pipeline on synthetic grids")
    b.add_argument("--links", type=int, nargs="+", default=[100, 400, 1000])
    _common(b, inputs=False)
    return parser


def config_from_args(args):
    over = {dest: getattr(args, dest, None) for _, dest, _, _ in _OVERRIDES}
    for key in ("centerlines", "heightfield", "texture", "out", "threads"):
        over[key] = getattr(args, key, None)
    geo = getattr(args, "ortho_georef", None)
    over["ortho_georef"] = list(geo) if geo else None
    if args.config:
        return PipelineConfig.from_json(args.config, **over)
    return PipelineConfig(**{k: v for k, v in over.items() if v is not None})


def cmd_build(args):
    cfg = config_from_args(args)
    res = run_pipeline(cfg)
    c = res.report["counts"]
    print(f"{c['links']} links, {c['intersections']} intersections, {c.get('ilanes', 0)} I_Lanes -> {cfg.out}")
    return EXIT_OK


def cmd_network(args):
    cfg = config_from_args(args)
    timings = {}
    if cfg.centerlines is None:
        raise InputError("no centerline input given")
    net = compute_network(cfg, timings=timings)
    export_semantic_json(network_document(net), Path(cfg.out) / "network.json")
    print(f"{len(net.links)} links, {len(net.intersections)} intersections -> {cfg.out}")
    return EXIT_OK


def cmd_profile(args):
    from ..terrain import load_heightfield
    from ..synthetic import flat_dem, network_extent

    cfg = config_from_args(args)
    timings = {}
    net = compute_network(cfg, timings=timings)
    if cfg.heightfield:
        hf = load_heightfield(cfg.heightfield)
    elif cfg.flat_elevation is not None:
        hf = flat_dem(network_extent(net), cfg.flat_elevation)
    else:
        raise InputError("no height field given")
    _, profiles = compute_profiles(cfg, net, hf, timings)
    for sid, prof in sorted(profiles.items()):
        export_profile_csv(prof, Path(cfg.out) / "profiles" / f"{sid}.csv")
    print(f"{len(profiles)} profiles -> {Path(cfg.out) / 'profiles'}")
    return EXIT_OK


def cmd_validate(args):
    out = args.out_dir or args.out or "out"
    results = validate_outputs(out)
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_INPUT


def cmd_bench(args):
    from ..synthetic import grid_for_links, network_extent, ramp_dem

    out = Path(args.out or "bench")
    curve = []
    for n in args.links:
        cl = grid_for_links(n)
        hf = ramp_dem(network_extent(cl), 0.01, 0.005)
        cfg = PipelineConfig(out=str(out / f"grid_{n}"), threads=args.threads or 1)
        t0 = time.perf_counter()
        res = run_pipeline(cfg, centerlines=CenterlineSet(cl.roads), heightfield=hf)
        dt = time.perf_counter() - t0
        curve.append({"requested_links": n, "links": res.report["counts"]["links"], "seconds": dt})
        print(f"{res.report['counts']['links']:6d} links  {dt:8.2f} s")
    times = [c["seconds"] for c in curve]
    report = {"scaling": curve, "monotone": all(a < b for a, b in zip(times, times[1:]))}
    write_report(report, out / "report.json")
    return EXIT_OK


COMMANDS = {"build": cmd_build, "network": cmd_network, "profile": cmd_profile,
            "validate": cmd_validate, "bench": cmd_bench}


def exit_code(exc):
    if isinstance(exc, InfeasibleFit):
        return EXIT_INFEASIBLE
    if isinstance(exc, (ExportError, OSError)):
        return EXIT_IO
    return EXIT_INPUT


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (RoadNetError, OSError) as exc:
        stage = getattr(exc, "stage", None)
        where = f" during {stage}" if stage else ""
        print(f"error{where}: {exc}", file=sys.stderr)
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
