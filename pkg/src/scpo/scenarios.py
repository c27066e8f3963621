"""Synthetic scenario generators.

Each scenario writes a points file and an obstacles file, byte-deterministic
for a given seed, together with suggested grid parameters:

* ``river``    -- two blobs on opposite sides of a thin full-height strip,
                  with bridge points in the strip's cell column. With the
                  strip the pipeline finds 2 regions; without it, 1.
* ``blobs``    -- three Gaussian blobs, no obstacles.
* ``uniform_noise`` -- uniform scatter, no obstacles.
* ``u_shape``  -- points wrapped around three sides of a square obstacle so
                  the region's mean point falls inside the obstacle,
                  forcing the cost-based center fallback. The generator
                  asserts that property before writing anything.
"""

from __future__ import annotations

import json
import random
from pathlib import Path
from typing import Any

from .errors import UnknownScenario
from .geometry import ObstacleSet, Point, Polygon, Rect, strictly_inside_any
from .io import write_text_atomic

AREA = Rect(0.0, 0.0, 10.0, 10.0)


def _fill(rng: random.Random, x_lo: float, y_lo: float, x_hi: float, y_hi: float, count: int) -> list[Point]:
    return [Point(rng.uniform(x_lo, x_hi), rng.uniform(y_lo, y_hi)) for _ in range(count)]


def _river(rng: random.Random) -> tuple[list[Point], ObstacleSet, dict[str, Any]]:
    # grid: m=25 -> 2x2 cells; the strip obstructs exactly column 2
    strip = Polygon([Point(4.95, 0.0), Point(5.05, 0.0), Point(5.05, 10.0), Point(4.95, 10.0)])
    points: list[Point] = []
    for row_lo in (2.0, 4.0, 6.0):  # cells (1,1), (2,1), (3,1)
        points += _fill(rng, 2.2, row_lo + 0.2, 3.8, row_lo + 1.8, 10)
    for row_lo in (2.0, 4.0, 6.0):  # cells (1,3), (2,3), (3,3)
        points += _fill(rng, 6.2, row_lo + 0.2, 7.8, row_lo + 1.8, 10)
    # bridge points in cell (2,2), clear of the strip itself
    points += _fill(rng, 4.15, 4.2, 4.85, 5.8, 6)
    points += _fill(rng, 5.15, 4.2, 5.85, 5.8, 6)
    meta = {"m": 25, "h": 0.5}
    return points, ObstacleSet.of(strip), meta


def _blobs(rng: random.Random) -> tuple[list[Point], ObstacleSet, dict[str, Any]]:
    centers = [(2.5, 2.5), (7.5, 3.5), (5.0, 7.5)]
    points: list[Point] = []
    for cx, cy in centers:
        made = 0
        while made < 60:
            p = Point(rng.gauss(cx, 0.4), rng.gauss(cy, 0.4))
            if AREA.contains(p):
                points.append(p)
                made += 1
    return points, ObstacleSet(), {"m": 25, "h": 0.5}


def _uniform_noise(rng: random.Random) -> tuple[list[Point], ObstacleSet, dict[str, Any]]:
    points = _fill(rng, AREA.x_lo, AREA.y_lo, AREA.x_hi, AREA.y_hi, 150)
    return points, ObstacleSet(), {"m": 100, "h": 1.0}


def _u_shape(rng: random.Random) -> tuple[list[Point], ObstacleSet, dict[str, Any]]:
    # grid: m=100 -> 1x1 cells; square obstructs cells rows/cols 3..6
    square = Polygon([Point(4.0, 4.0), Point(6.0, 4.0), Point(6.0, 6.0), Point(4.0, 6.0)])
    cells = (
        [(r, 2) for r in range(2, 8)]      # left arm
        + [(2, c) for c in range(3, 7)]    # bottom
        + [(r, 7) for r in range(2, 8)]    # right arm
    )
    points: list[Point] = []
    for r, c in cells:
        points += _fill(rng, c + 0.15, r + 0.15, c + 0.85, r + 0.85, 8)
    mean = Point(sum(p.x for p in points) / len(points), sum(p.y for p in points) / len(points))
    obs = ObstacleSet.of(square)
    if not strictly_inside_any(mean, obs):
        raise AssertionError(
            f"u_shape generator invariant violated: mean {mean} is not inside the obstacle"
        )
    return points, obs, {"m": 100, "h": 0.5}


_GENERATORS = {
    "river": _river,
    "blobs": _blobs,
    "uniform_noise": _uniform_noise,
    "u_shape": _u_shape,
}

SCENARIO_NAMES = tuple(sorted(_GENERATORS))


def generate_scenario(name: str, seed: int) -> tuple[list[Point], ObstacleSet, dict[str, Any]]:
    try:
        generator = _GENERATORS[name]
    except KeyError:
        raise UnknownScenario(
            f"unknown scenario {name!r}; choose from {', '.join(SCENARIO_NAMES)}"
        ) from None
    points, obs, meta = generator(random.Random(seed))
    meta = {"scenario": name, "seed": seed, "area": [AREA.x_lo, AREA.y_lo, AREA.x_hi, AREA.y_hi], **meta}
    return points, obs, meta


def points_file_text(points: list[Point], meta: dict[str, Any]) -> str:
    area = ",".join(repr(v) for v in meta["area"])
    lines = [
        f"# scenario: {meta['scenario']} (seed {meta['seed']})",
        f"# suggested run: --area {area} --m {meta['m']} --h {meta['h']}",
    ]
    lines += [f"{p.x!r},{p.y!r}" for p in points]
    return "\n".join(lines) + "\n"


def obstacles_file_text(obs: ObstacleSet) -> str:
    rings = [[[p.x, p.y] for p in poly.vertices] for poly in obs]
    return json.dumps(rings) + "\n"


def write_scenario_files(
    name: str, seed: int, points_path: str | Path, obstacles_path: str | Path
) -> dict[str, Any]:
    """Generate a scenario and write both files atomically; returns the
    scenario metadata (area and suggested m/h)."""
    points, obs, meta = generate_scenario(name, seed)
    write_text_atomic(points_file_text(points, meta), points_path)
    write_text_atomic(obstacles_file_text(obs), obstacles_path)
    return meta
