"""Empirical scaling benchmark for the pipeline stages.

For each dataset size N the four stages (grid pass, marking, region growth,
centers) are timed separately on a synthetic scene with fixed obstacles and a
fixed seed. Fast stages are repeated until a minimum accumulated wall time is
reached so the reported per-run figures are stable; the best of a few batches
is reported. The benchmark asserts nothing itself; readers of the report
interpret the scaling.
"""

from __future__ import annotations

import math
import random
import time
from typing import Any, Callable, Sequence

from .clustering import assign_centers, find_regions
from .geometry import ObstacleSet, Point, Polygon, Rect, strictly_inside_any
from .grid import GridConfig, accumulate_grid, label_density, mark_obstructed_exact

BENCH_AREA = Rect(0.0, 0.0, 10.0, 10.0)


def default_bench_obstacles() -> ObstacleSet:
    """Two small off-center squares; the big region's mean stays outside
    them, so the centers stage is cell-statistics work only."""
    return ObstacleSet.of(
        Polygon([Point(1.5, 1.5), Point(2.5, 1.5), Point(2.5, 2.5), Point(1.5, 2.5)]),
        Polygon([Point(7.0, 6.5), Point(8.0, 6.5), Point(8.0, 7.5), Point(7.0, 7.5)]),
    )


def synth_points(n: int, obs: ObstacleSet, seed: int) -> list[Point]:
    """Uniform points over the bench area, rejection-sampled off obstacle
    interiors; deterministic per (n, seed)."""
    rng = random.Random(seed * 1_000_003 + n)
    points: list[Point] = []
    while len(points) < n:
        p = Point(rng.uniform(BENCH_AREA.x_lo, BENCH_AREA.x_hi),
                  rng.uniform(BENCH_AREA.y_lo, BENCH_AREA.y_hi))
        if not strictly_inside_any(p, obs):
            points.append(p)
    return points


def _measure(fn: Callable[[], Any], min_seconds: float, batches: int) -> tuple[float, int]:
    """Best mean wall time per execution over a few batches, with the batch
    size chosen so each batch runs at least ``min_seconds``."""
    t0 = time.perf_counter()
    fn()
    first = time.perf_counter() - t0
    k = max(1, min(100_000, math.ceil(min_seconds / max(first, 1e-9))))
    best = first
    for _ in range(batches):
        t0 = time.perf_counter()
        for _ in range(k):
            fn()
        best = min(best, (time.perf_counter() - t0) / k)
    return best, k


def run_bench(
    scales: Sequence[int],
    m: int,
    h: float,
    seed: int = 1,
    min_seconds: float = 0.05,
    batches: int = 3,
) -> dict[str, Any]:
    """Time each pipeline stage at every dataset size; returns the report
    document with one (N, stage, seconds) row per measurement."""
    obs = default_bench_obstacles()
    cfg = GridConfig(area=BENCH_AREA, m=m, h=h)
    rows: list[dict[str, Any]] = []

    for n in scales:
        points = synth_points(n, obs, seed)

        grid_holder = {}

        def grid_stage() -> None:
            grid_holder["g"] = accumulate_grid(points, obs, cfg)

        seconds, k = _measure(grid_stage, min_seconds, batches)
        rows.append({"n": n, "stage": "grid_pass", "seconds": seconds, "repeats": k})
        g = grid_holder["g"]

        def marking_stage() -> None:
            label_density(g)
            mark_obstructed_exact(g, obs)

        seconds, k = _measure(marking_stage, min_seconds, batches)
        rows.append({"n": n, "stage": "marking", "seconds": seconds, "repeats": k})

        regions_holder = {}

        def bfs_stage() -> None:
            regions_holder["regions"] = find_regions(g)

        seconds, k = _measure(bfs_stage, min_seconds, batches)
        rows.append({"n": n, "stage": "region_growth", "seconds": seconds, "repeats": k})
        regions = regions_holder["regions"]

        def centers_stage() -> None:
            assign_centers(regions, g, obs)

        seconds, k = _measure(centers_stage, min_seconds, batches)
        rows.append({"n": n, "stage": "centers", "seconds": seconds, "repeats": k})

    return {
        "schema_version": 1,
        "config": {
            "scales": list(scales),
            "m": m,
            "h": h,
            "seed": seed,
            "min_seconds": min_seconds,
            "batches": batches,
            "area": [BENCH_AREA.x_lo, BENCH_AREA.y_lo, BENCH_AREA.x_hi, BENCH_AREA.y_hi],
            "obstacle_vertices": obs.total_vertex_count,
        },
        "rows": rows,
    }


def bench_csv(report: dict[str, Any]) -> str:
    lines = ["n,stage,seconds,repeats"]
    for row in report["rows"]:
        lines.append(f"{row['n']},{row['stage']},{row['seconds']!r},{row['repeats']}")
    return "\n".join(lines) + "\n"
