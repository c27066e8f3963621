"""Command-line front end.

Subcommands:

* ``cluster``  -- run the pipeline on a points file (and optional obstacles
                  file), write the JSON result document, and optionally an
                  SVG cluster map and a matplotlib figure.
* ``generate`` -- write a synthetic scenario's points/obstacles files.
* ``bench``    -- time the pipeline stages over increasing dataset sizes.

Exit codes: 0 on success, 1 on input validation failure, 2 on internal
error. Log verbosity comes from --log-level or the SCPO_LOG_LEVEL
environment variable.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Sequence

from . import __version__
from .bench import bench_csv, run_bench
from .clustering import run_scpo_with_grid
from .errors import ConfigError, InputError
from .geometry import ObstacleSet, Point, Rect
from .grid import Connectivity, GridConfig, MarkingMode
from .io import (
    build_output_document,
    ingest_obstacles,
    ingest_points,
    serialize_document,
    write_output_document,
    write_text_atomic,
)
from .render import render_svg
from .scenarios import SCENARIO_NAMES, write_scenario_files

log = logging.getLogger("scpo")


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 on usage errors instead of 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def parse_fraction(text: str) -> float:
    """Accept '0.5' or '50%' and return the fraction."""
    text = text.strip()
    try:
        if text.endswith("%"):
            value = float(text[:-1]) / 100.0
        else:
            value = float(text)
    except ValueError:
        raise ConfigError(f"cannot parse percentage {text!r}") from None
    return value


def parse_area(text: str) -> Rect | None:
    """'auto' -> None; otherwise 'x0,y0,x1,y1' -> Rect."""
    text = text.strip()
    if text.lower() == "auto":
        return None
    parts = text.split(",")
    if len(parts) != 4:
        raise ConfigError(f"area must be 'auto' or 'x0,y0,x1,y1', got {text!r}")
    try:
        x0, y0, x1, y1 = (float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"non-numeric area coordinate in {text!r}") from None
    try:
        return Rect(x0, y0, x1, y1)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def auto_area(points: Sequence[Point]) -> Rect:
    """Bounding box of the points padded by 1% per dimension; degenerate
    dimensions borrow the other dimension's span."""
    if len(set(points)) < 2:
        raise ConfigError("auto area requires at least 2 distinct points; pass --area explicitly")
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    x_lo, x_hi, y_lo, y_hi = min(xs), max(xs), min(ys), max(ys)
    span_x = x_hi - x_lo
    span_y = y_hi - y_lo
    pad_x = 0.01 * (span_x if span_x > 0 else span_y)
    pad_y = 0.01 * (span_y if span_y > 0 else span_x)
    return Rect(x_lo - pad_x, y_lo - pad_y, x_hi + pad_x, y_hi + pad_y)


def _setup_logging(level_name: str | None) -> str:
    name = level_name or os.environ.get("SCPO_LOG_LEVEL", "info")
    level = getattr(logging, name.upper(), None)
    if not isinstance(level, int):
        raise ConfigError(f"unknown log level {name!r}")
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )
    return name.lower()


def _cmd_cluster(args: argparse.Namespace) -> int:
    log_level = _setup_logging(args.log_level)
    points = ingest_points(args.points)
    obs = ingest_obstacles(args.obstacles) if args.obstacles else ObstacleSet()
    area = parse_area(args.area)
    area_mode = "explicit" if area is not None else "auto"
    if area is None:
        area = auto_area(points)
    h = parse_fraction(args.h)
    try:
        cfg = GridConfig(
            area=area,
            m=args.m,
            h=h,
            connectivity=Connectivity(args.connectivity),
            marking_mode=MarkingMode(args.marking),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    result, g = run_scpo_with_grid(points, obs, cfg, collect_timings=args.timings)

    # warnings go to both the log and the output document
    for warning in result.diagnostics.warnings:
        log.warning(warning)
    log.info(
        "%d region(s), %d outlier(s), %d dense / %d obstructed cells",
        len(result.regions), len(result.outlier_point_ids),
        result.diagnostics.dense_cells, result.diagnostics.obstructed_cells,
    )

    config_echo = {
        "points_path": args.points,
        "obstacles_path": args.obstacles,
        "area": [area.x_lo, area.y_lo, area.x_hi, area.y_hi],
        "area_mode": area_mode,
        "m": args.m,
        "h": h,
        "connectivity": args.connectivity,
        "marking": args.marking,
        "out_path": args.out,
        "svg_path": args.svg,
        "log_level": log_level,
    }
    doc = build_output_document(result, g, config_echo)
    write_output_document(doc, args.out)
    log.info("wrote %s", args.out)
    if args.svg:
        render_svg(result, g, obs, args.svg)
        log.info("wrote %s", args.svg)
    if args.plot:
        from .figures import save_cluster_figure

        save_cluster_figure(result, g, obs, args.plot)
        log.info("wrote %s", args.plot)
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    _setup_logging(args.log_level)
    meta = write_scenario_files(args.scenario, args.seed, args.out_points, args.out_obstacles)
    log.info(
        "wrote %s and %s (suggested: --area %s --m %d --h %s)",
        args.out_points, args.out_obstacles,
        ",".join(str(v) for v in meta["area"]), meta["m"], meta["h"],
    )
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    _setup_logging(args.log_level)
    try:
        scales = [int(s) for s in args.scales.split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse scales {args.scales!r}") from None
    if not scales:
        raise ConfigError("at least one scale is required")
    h = parse_fraction(args.h)
    report = run_bench(scales, args.m, h, seed=args.seed)
    write_text_atomic(serialize_document(report), args.out)
    log.info("wrote %s", args.out)
    if args.csv:
        write_text_atomic(bench_csv(report), args.csv)
        log.info("wrote %s", args.csv)
    if args.plot:
        from .figures import save_bench_figure

        save_bench_figure(report, args.plot)
        log.info("wrote %s", args.plot)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="scpo", description=__doc__, allow_abbrev=False,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"scpo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cluster = sub.add_parser("cluster", help="run the clustering pipeline")
    p_cluster.add_argument("--points", required=True, help="points file (x,y per line)")
    p_cluster.add_argument("--obstacles", default=None, help="obstacles JSON file")
    p_cluster.add_argument("--area", default="auto", help="'auto' or x0,y0,x1,y1")
    p_cluster.add_argument("--m", type=int, required=True, help="cell count (perfect square)")
    p_cluster.add_argument("--h", required=True, help="density percentage (0.5 or 50%%)")
    p_cluster.add_argument("--connectivity", type=int, choices=(4, 8), default=4)
    p_cluster.add_argument("--marking", choices=("exact", "subdivision"), default="exact")
    p_cluster.add_argument("--out", required=True, help="output JSON document")
    p_cluster.add_argument("--svg", default=None, help="optional SVG cluster map")
    p_cluster.add_argument("--plot", default=None, help="optional matplotlib cluster figure")
    p_cluster.add_argument("--timings", action="store_true",
                           help="include wall-clock stage timings in the output document "
                                "(off by default so identical inputs give identical bytes)")
    p_cluster.add_argument("--log-level", default=None)
    p_cluster.set_defaults(func=_cmd_cluster)

    p_generate = sub.add_parser("generate", help="write a synthetic scenario")
    p_generate.add_argument("--scenario", required=True, choices=SCENARIO_NAMES)
    p_generate.add_argument("--seed", type=int, required=True)
    p_generate.add_argument("--out-points", required=True)
    p_generate.add_argument("--out-obstacles", required=True)
    p_generate.add_argument("--log-level", default=None)
    p_generate.set_defaults(func=_cmd_generate)

    p_bench = sub.add_parser("bench", help="time pipeline stages over dataset sizes")
    p_bench.add_argument("--scales", required=True, help="comma-separated N values")
    p_bench.add_argument("--m", type=int, default=400)
    p_bench.add_argument("--h", default="0.5")
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.add_argument("--out", required=True, help="output JSON report")
    p_bench.add_argument("--csv", default=None, help="optional CSV table")
    p_bench.add_argument("--plot", default=None, help="optional matplotlib scaling figure")
    p_bench.add_argument("--log-level", default=None)
    p_bench.set_defaults(func=_cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        log.error("%s", exc)
        print(f"scpo: error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"scpo: error: {exc}", file=sys.stderr)
        return 1
    except Exception:  # noqa: BLE001 - the CLI boundary reports and exits 2
        logging.getLogger("scpo").exception("internal error")
        return 2


if __name__ == "__main__":
    sys.exit(main())
