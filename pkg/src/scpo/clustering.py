"""Region extraction and center finding on a labeled grid.

Regions are maximal connected components of dense, non-obstructed cells,
grown by FIFO breadth-first search in row-major seed order. Each region gets
a center: the mean of all its member points when that mean avoids every
obstacle, otherwise the mean of the region cell whose count-weighted sum of
squared obstructed distances to the other cells is smallest.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import EmptyRegion, PointInsideObstacle
from .geometry import ObstacleSet, Point, strictly_inside_any
from .grid import Cell, Connectivity, Grid, GridConfig, MarkingMode, accumulate_grid, label_density, mark_obstructed_by_subdivision, mark_obstructed_exact
from .visibility import VisibilityGraph, build_visibility_graph, obstructed_distance

_NEIGHBORS_4 = ((-1, 0), (1, 0), (0, -1), (0, 1))
_NEIGHBORS_8 = _NEIGHBORS_4 + ((-1, -1), (-1, 1), (1, -1), (1, 1))


class CenterKind(Enum):
    GLOBAL_MEAN = "global_mean"
    MIN_COST_CELL_MEAN = "min_cost_cell_mean"


@dataclass
class Region:
    """A maximal connected set of dense, non-obstructed cells.

    ``cell_indices`` is in BFS discovery order; ``member_point_ids`` is the
    sorted union of the member cells' point ids. ``center`` and
    ``center_kind`` are filled by :func:`find_center`.
    """

    id: int
    cell_indices: list[tuple[int, int]]
    member_point_ids: list[int]
    center: Point | None = None
    center_kind: CenterKind | None = None


@dataclass
class Diagnostics:
    dense_cells: int
    obstructed_cells: int
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] | None = None


@dataclass
class ClusteringResult:
    """Pipeline output: regions with centers, outlier point ids, and run
    diagnostics. Every point id appears exactly once, either in one region's
    member list or among the outliers."""

    regions: list[Region]
    outlier_point_ids: list[int]
    diagnostics: Diagnostics


def neighbor_offsets(connectivity: Connectivity) -> tuple[tuple[int, int], ...]:
    return _NEIGHBORS_4 if connectivity is Connectivity.FOUR else _NEIGHBORS_8


def find_regions(g: Grid) -> list[Region]:
    """Grow maximal regions of dense, non-obstructed cells by FIFO BFS.

    Cells are scanned row-major; every unprocessed dense non-obstructed cell
    seeds a new region numbered in seed order. Obstructed cells never join a
    region, regardless of density.
    """
    w = g.w
    offsets = neighbor_offsets(g.config.connectivity)
    seen = [[False] * w for _ in range(w)]
    regions: list[Region] = []
    for seed_r in range(w):
        for seed_c in range(w):
            cell = g.cells[seed_r][seed_c]
            if seen[seed_r][seed_c] or not cell.dense or cell.obstructed:
                continue
            seen[seed_r][seed_c] = True
            queue: deque[tuple[int, int]] = deque([(seed_r, seed_c)])
            cell_indices: list[tuple[int, int]] = []
            member_ids: list[int] = []
            while queue:
                r, c = queue.popleft()
                cell_indices.append((r, c))
                member_ids.extend(g.cells[r][c].point_ids)
                for dr, dc in offsets:
                    nr, nc = r + dr, c + dc
                    if not (0 <= nr < w and 0 <= nc < w) or seen[nr][nc]:
                        continue
                    neighbor = g.cells[nr][nc]
                    if neighbor.dense and not neighbor.obstructed:
                        seen[nr][nc] = True
                        queue.append((nr, nc))
            regions.append(
                Region(
                    id=len(regions),
                    cell_indices=cell_indices,
                    member_point_ids=sorted(member_ids),
                )
            )
    return regions


def region_mean(r: Region, g: Grid) -> Point:
    """Arithmetic mean of all points in the region, computed from the
    per-cell coordinate sums. Raises ``EmptyRegion`` when the region holds
    no points (possible only in the degenerate d = 0 case)."""
    sum_x = sum_y = 0.0
    n = 0
    for idx in r.cell_indices:
        cell = g.cell_at(idx)
        sum_x += cell.sum_x
        sum_y += cell.sum_y
        n += cell.n
    if n == 0:
        raise EmptyRegion(f"region {r.id} contains no points")
    return Point(sum_x / n, sum_y / n)


def region_cost(c: Cell, r: Region, g: Grid, vg: VisibilityGraph) -> float:
    """Cost of a candidate cell: the sum over the region's non-empty cells j
    of n_j * d'(mean_c, mean_j)^2, with obstructed distances d' answered by
    the shared visibility graph. The candidate's own term is zero."""
    m_c = c.mean
    if m_c is None:
        raise EmptyRegion(f"cell {c.index} has no mean")
    total = 0.0
    for idx in r.cell_indices:
        other = g.cell_at(idx)
        if other.n == 0 or idx == c.index:
            continue
        d = obstructed_distance(m_c, other.mean, vg).length
        total += other.n * d * d
    return total


def find_center(
    r: Region, g: Grid, obs: ObstacleSet, vg: VisibilityGraph | None = None
) -> tuple[Point, CenterKind]:
    """Center of a region.

    The mean point of all member points is returned when it is not strictly
    inside any obstacle. Otherwise every non-empty region cell is scored
    with :func:`region_cost` and the minimum-cost cell's mean is returned,
    ties broken by smallest (row, col). A visibility graph is built from the
    obstacles if none is supplied and the fallback branch is needed.
    """
    mp = region_mean(r, g)
    if not strictly_inside_any(mp, obs):
        return mp, CenterKind.GLOBAL_MEAN
    if vg is None:
        vg = build_visibility_graph(obs)
    best: tuple[float, tuple[int, int]] | None = None
    best_mean: Point | None = None
    for idx in sorted(r.cell_indices):
        cell = g.cell_at(idx)
        if cell.n == 0:
            continue
        cost = region_cost(cell, r, g, vg)
        if best is None or cost < best[0]:
            best = (cost, idx)
            best_mean = cell.mean
    if best_mean is None:
        raise EmptyRegion(f"region {r.id} contains no points")
    if strictly_inside_any(best_mean, obs):
        # reachable only under subdivision marking, which can leave a cell
        # that overlaps an obstacle unmarked
        raise PointInsideObstacle(
            f"region {r.id}: chosen center cell mean lies inside an obstacle"
        )
    return best_mean, CenterKind.MIN_COST_CELL_MEAN


def run_scpo(
    points: Sequence[Point],
    obs: ObstacleSet,
    cfg: GridConfig,
    collect_timings: bool = True,
) -> ClusteringResult:
    """The full pipeline: grid accumulation, density labeling, obstruction
    marking, BFS region growth, and per-region center finding.

    Deterministic: identical inputs produce identical results. Errors from
    any stage propagate; no partial result is emitted.
    """
    result, _ = run_scpo_with_grid(points, obs, cfg, collect_timings)
    return result


def run_scpo_with_grid(
    points: Sequence[Point],
    obs: ObstacleSet,
    cfg: GridConfig,
    collect_timings: bool = True,
) -> tuple[ClusteringResult, Grid]:
    """:func:`run_scpo` that also hands back the built grid, for callers
    that report on it (the CLI's output document and map rendering)."""
    timings: dict[str, float] = {}
    t_start = time.perf_counter()

    t0 = time.perf_counter()
    g = accumulate_grid(points, obs, cfg)
    timings["grid_pass"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    label_density(g)
    if cfg.marking_mode is MarkingMode.SUBDIVISION:
        mark_obstructed_by_subdivision(g, obs)
    else:
        mark_obstructed_exact(g, obs)
    timings["marking"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    regions = find_regions(g)
    timings["region_growth"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    assign_centers(regions, g, obs)
    timings["centers"] = time.perf_counter() - t0

    timings["total"] = time.perf_counter() - t_start
    return _assemble_result(g, regions, timings if collect_timings else None), g


def assign_centers(regions: Sequence[Region], g: Grid, obs: ObstacleSet) -> None:
    """Fill center and center_kind on every region.

    The shared visibility graph is built lazily, once, and only when some
    region's mean point falls inside an obstacle."""
    vg: VisibilityGraph | None = None
    if not obs.is_empty:
        for r in regions:
            if strictly_inside_any(region_mean(r, g), obs):
                vg = build_visibility_graph(obs)
                break
    for r in regions:
        center, kind = find_center(r, g, obs, vg)
        r.center = center
        r.center_kind = kind


def _assemble_result(
    g: Grid, regions: list[Region], timings: dict[str, float] | None
) -> ClusteringResult:
    member_ids: set[int] = set()
    for r in regions:
        member_ids.update(r.member_point_ids)
    outliers = sorted(set(g.points) - member_ids)
    diagnostics = Diagnostics(
        dense_cells=g.dense_cell_count,
        obstructed_cells=g.obstructed_cell_count,
        warnings=g.warnings(),
        timings=timings,
    )
    return ClusteringResult(
        regions=regions,
        outlier_point_ids=outliers,
        diagnostics=diagnostics,
    )


def run_scpo_on_grid(g: Grid, obs: ObstacleSet) -> ClusteringResult:
    """Region growth and center finding on an already built and labeled
    grid. Used by incremental workflows where the grid is updated in place."""
    regions = find_regions(g)
    assign_centers(regions, g, obs)
    return _assemble_result(g, regions, None)
