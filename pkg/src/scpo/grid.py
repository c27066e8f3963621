"""Rectangular density grid over the spatial area.

The area is split into m cells (w = sqrt(m) per side). A single pass over the
data accumulates per-cell counts and coordinate sums; cells are then labeled
dense/non-dense against the threshold d = round(N/m * h) and
obstructed/non-obstructed by one of two marking modes:

* ``exact`` -- a cell is obstructed iff its closed rectangle intersects any
  obstacle. Implemented as a supercover walk along each obstacle edge
  (marking every cell the edge meets, including corner and boundary grazes)
  plus marking cells whose center lies strictly inside an obstacle.
* ``subdivision`` -- samples each obstacle edge by recursive bisection and
  marks the cells containing the samples. Cheaper, can miss corner-clipped
  cells, never over-marks.

Points are assigned to half-open cells, closed on the area's top/right
boundary, so every point lands in exactly one cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import ConfigError, PointOutsideArea, UnknownPointId
from .geometry import ObstacleSet, Point, PointLocation, Rect, _point_location


class Connectivity(Enum):
    FOUR = 4
    EIGHT = 8


class MarkingMode(Enum):
    EXACT = "exact"
    SUBDIVISION = "subdivision"


@dataclass(frozen=True)
class GridConfig:
    """Grid parameters: the spatial area, the cell count m (a perfect
    square), the density percentage h as a fraction in (0, 1], the region
    connectivity, and the obstruction marking mode."""

    area: Rect
    m: int
    h: float
    connectivity: Connectivity = Connectivity.FOUR
    marking_mode: MarkingMode = MarkingMode.EXACT

    def __post_init__(self) -> None:
        if self.m < 4:
            raise ConfigError(f"m must be at least 4, got {self.m}")
        w = math.isqrt(self.m)
        if w * w != self.m:
            raise ConfigError(f"m must be a perfect square, got {self.m}")
        if not (0.0 < self.h <= 1.0):
            raise ConfigError(f"h must be a fraction in (0, 1], got {self.h}")

    @property
    def w(self) -> int:
        return math.isqrt(self.m)


@dataclass
class Cell:
    """One grid cell: its index, extent, point statistics, and labels.

    The mean is kept as coordinate sums so that incremental insert/delete
    updates stay O(1) per change.
    """

    row: int
    col: int
    extent: Rect
    n: int = 0
    sum_x: float = 0.0
    sum_y: float = 0.0
    point_ids: list[int] = field(default_factory=list)
    dense: bool = False
    obstructed: bool = False

    @property
    def index(self) -> tuple[int, int]:
        return (self.row, self.col)

    @property
    def mean(self) -> Point | None:
        """Mean of the contained points; None for an empty cell."""
        if self.n == 0:
            return None
        return Point(self.sum_x / self.n, self.sum_y / self.n)


class Grid:
    """The w x w cell array with its derived parameters.

    d is the density threshold round_half_up(N/m * h); e is the smaller of
    the two cell dimensions. The grid keeps a registry of point id ->
    coordinates so deletions can down-date cell statistics. Mutation goes
    through :func:`incremental_update` only and requires exclusive access;
    reads may be shared between updates.
    """

    def __init__(self, config: GridConfig, obstacles: ObstacleSet):
        self.config = config
        self.obstacles = obstacles
        w = config.w
        area = config.area
        self.cell_width = area.width / w
        self.cell_height = area.height / w
        self.e = min(self.cell_width, self.cell_height)
        self.cells: list[list[Cell]] = [
            [
                Cell(row=r, col=c, extent=self._cell_extent(r, c))
                for c in range(w)
            ]
            for r in range(w)
        ]
        self.n_points = 0
        self.d = 0
        self.points: dict[int, Point] = {}
        self.points_in_obstacles: set[int] = set()
        self._next_id = 0

    def _cell_extent(self, row: int, col: int) -> Rect:
        area = self.config.area
        # the same expression is used by the supercover walk, so boundary
        # coordinates compare bit-identically
        return Rect(
            area.x_lo + col * self.cell_width,
            area.y_lo + row * self.cell_height,
            area.x_lo + (col + 1) * self.cell_width,
            area.y_lo + (row + 1) * self.cell_height,
        )

    @property
    def w(self) -> int:
        return self.config.w

    def cell_index_of(self, p: Point) -> tuple[int, int]:
        """Cell index for a point inside the closed area (top/right boundary
        clamps into the last row/column)."""
        area = self.config.area
        w = self.config.w
        col = int((p.x - area.x_lo) / self.cell_width)
        row = int((p.y - area.y_lo) / self.cell_height)
        if col >= w:
            col = w - 1
        if row >= w:
            row = w - 1
        return (row, col)

    def cell_at(self, index: tuple[int, int]) -> Cell:
        return self.cells[index[0]][index[1]]

    def iter_cells(self) -> Iterator[Cell]:
        for row in self.cells:
            yield from row

    @property
    def dense_cell_count(self) -> int:
        return sum(1 for c in self.iter_cells() if c.dense)

    @property
    def obstructed_cell_count(self) -> int:
        return sum(1 for c in self.iter_cells() if c.obstructed)

    def recompute_threshold(self) -> None:
        self.d = _round_half_up(self.n_points / self.config.m * self.config.h)

    def warnings(self) -> list[str]:
        """Diagnostic warnings derived from the current grid state."""
        out: list[str] = []
        if self.points_in_obstacles:
            ids = sorted(self.points_in_obstacles)
            shown = ", ".join(str(i) for i in ids[:10])
            more = "" if len(ids) <= 10 else f" (+{len(ids) - 10} more)"
            out.append(
                f"{len(ids)} point(s) lie strictly inside an obstacle and will "
                f"be reported as outliers (ids: {shown}{more})"
            )
        if self.d == 0:
            out.append("density threshold d is 0, so every cell is dense")
        return out

    def _add_point(self, point_id: int, p: Point) -> None:
        r, c = self.cell_index_of(p)
        cell = self.cells[r][c]
        cell.n += 1
        cell.sum_x += p.x
        cell.sum_y += p.y
        cell.point_ids.append(point_id)
        self.points[point_id] = p
        self.n_points += 1
        if any(
            _point_location(p.x, p.y, poly) is PointLocation.INSIDE
            for poly in self.obstacles
        ):
            self.points_in_obstacles.add(point_id)

    def _remove_point(self, point_id: int) -> None:
        p = self.points.pop(point_id)
        r, c = self.cell_index_of(p)
        cell = self.cells[r][c]
        cell.n -= 1
        cell.sum_x -= p.x
        cell.sum_y -= p.y
        cell.point_ids.remove(point_id)
        if cell.n == 0:
            cell.sum_x = 0.0
            cell.sum_y = 0.0
        self.n_points -= 1
        self.points_in_obstacles.discard(point_id)


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def accumulate_grid(points: Iterable[Point], obs: ObstacleSet, cfg: GridConfig) -> Grid:
    """Single data pass: assign every point to its cell and accumulate n and
    the coordinate sums. No labels are set yet.

    Raises ``PointOutsideArea`` listing all offending indices. Points
    strictly inside an obstacle are accepted and recorded for the
    diagnostics (they will land in obstructed cells and end up as outliers).
    """
    g = Grid(cfg, obs)
    area = cfg.area
    outside: list[int] = []
    for i, p in enumerate(points):
        if not area.contains(p):
            outside.append(i)
            continue
        g._add_point(i, p)
    if outside:
        raise PointOutsideArea(outside)
    g._next_id = g.n_points
    g.recompute_threshold()
    return g


def label_density(g: Grid) -> Grid:
    """Label every cell dense iff n_c >= d. Nothing else changes."""
    d = g.d
    for cell in g.iter_cells():
        cell.dense = cell.n >= d
    return g


def subdivision_sample_points(a: Point, b: Point, e: float) -> list[Point]:
    """Sample points of the recursive edge bisection: both endpoints, then
    midpoints of every sub-segment longer than e (recursion stops once a
    sub-segment's length is <= e)."""
    samples: list[Point] = [a, b]

    def recurse(ax: float, ay: float, bx: float, by: float) -> None:
        if math.hypot(bx - ax, by - ay) > e:
            mx, my = (ax + bx) / 2.0, (ay + by) / 2.0
            samples.append(Point(mx, my))
            recurse(ax, ay, mx, my)
            recurse(mx, my, bx, by)

    recurse(a.x, a.y, b.x, b.y)
    return samples


def mark_obstructed_by_subdivision(g: Grid, obs: ObstacleSet) -> Grid:
    """Mark cells by sampling every obstacle edge: endpoint cells first, then
    recursive bisection midpoints down to the cell dimension e.

    The marked set is always a subset of the exact marking (every sample
    lies on the obstacle boundary) but can miss cells the edge merely clips.
    Marking is idempotent; already obstructed cells stay obstructed.
    """
    area = g.config.area
    for poly in obs:
        for seg_a, seg_b in _polygon_edges(poly):
            for p in subdivision_sample_points(seg_a, seg_b, g.e):
                if area.contains(p):
                    r, c = g.cell_index_of(p)
                    g.cells[r][c].obstructed = True
    return g


def mark_obstructed_exact(g: Grid, obs: ObstacleSet) -> Grid:
    """Mark every cell whose closed rectangle intersects any obstacle.

    Obstacle edges are walked with a supercover traversal that marks every
    cell the closed edge meets, including cells touched only at a corner or
    along a shared boundary line; cells strictly interior to an obstacle are
    caught by testing cell centers. The result matches a per-cell brute-force
    rectangle/polygon intersection test.
    """
    for poly in obs:
        for seg_a, seg_b in _polygon_edges(poly):
            for r, c in _edge_supercover(g, seg_a, seg_b):
                g.cells[r][c].obstructed = True
    for cell in g.iter_cells():
        if cell.obstructed:
            continue
        center = cell.extent.center
        if any(
            _point_location(center.x, center.y, poly) is PointLocation.INSIDE
            for poly in obs
        ):
            cell.obstructed = True
    return g


def _polygon_edges(poly) -> Iterator[tuple[Point, Point]]:
    vs = poly.vertices
    n = len(vs)
    for i in range(n):
        yield vs[i], vs[(i + 1) % n]


def _closed_span(v: float, lo: float, step: float, w: int) -> list[int]:
    """All cell indices along one axis whose closed interval
    [lo + i*step, lo + (i+1)*step] contains v."""
    base = int(math.floor((v - lo) / step))
    out = []
    for i in (base - 1, base, base + 1):
        if 0 <= i < w and lo + i * step <= v <= lo + (i + 1) * step:
            out.append(i)
    return out


def _edge_supercover(g: Grid, a: Point, b: Point) -> set[tuple[int, int]]:
    """Every cell whose closed rectangle meets the closed segment (a, b).

    The segment is cut at every grid-line crossing; each crossing point,
    both endpoints, and the midpoint of every resulting piece are resolved
    to all cells that contain them (a sample on a grid line belongs to the
    cells on both sides, a sample on a grid corner to all four). Crossings
    additionally force both cells adjacent to the crossed line, which keeps
    corner grazes robust against rounding in the crossing parameter.
    """
    area = g.config.area
    w = g.config.w
    cw, ch = g.cell_width, g.cell_height
    ax, ay, bx, by = a.x, a.y, b.x, b.y

    events: dict[float, tuple[set[int], set[int]]] = {
        0.0: (set(), set()),
        1.0: (set(), set()),
    }

    def event(t: float) -> tuple[set[int], set[int]]:
        return events.setdefault(t, (set(), set()))

    if ax != bx:
        x_min, x_max = (ax, bx) if ax <= bx else (bx, ax)
        for i in range(w + 1):
            xi = area.x_lo + i * cw
            if x_min <= xi <= x_max:
                t = (xi - ax) / (bx - ax)
                t = min(1.0, max(0.0, t))
                event(t)[0].add(i)
    if ay != by:
        y_min, y_max = (ay, by) if ay <= by else (by, ay)
        for i in range(w + 1):
            yi = area.y_lo + i * ch
            if y_min <= yi <= y_max:
                t = (yi - ay) / (by - ay)
                t = min(1.0, max(0.0, t))
                event(t)[1].add(i)

    ts = sorted(events)
    samples: list[tuple[float, set[int] | None, set[int] | None]] = []
    for idx, t in enumerate(ts):
        x_lines, y_lines = events[t]
        samples.append((t, x_lines, y_lines))
        if idx + 1 < len(ts):
            samples.append(((t + ts[idx + 1]) / 2.0, None, None))

    marked: set[tuple[int, int]] = set()
    for t, x_lines, y_lines in samples:
        px = ax + t * (bx - ax)
        py = ay + t * (by - ay)
        cols = set(_closed_span(px, area.x_lo, cw, w))
        rows = set(_closed_span(py, area.y_lo, ch, w))
        if x_lines:
            for i in x_lines:
                if 0 <= i - 1 < w:
                    cols.add(i - 1)
                if 0 <= i < w:
                    cols.add(i)
        if y_lines:
            for i in y_lines:
                if 0 <= i - 1 < w:
                    rows.add(i - 1)
                if 0 <= i < w:
                    rows.add(i)
        for r in rows:
            for c in cols:
                marked.add((r, c))
    return marked


def build_grid(points: Iterable[Point], obs: ObstacleSet, cfg: GridConfig) -> Grid:
    """Full grid construction: one accumulation pass over the data, then
    density labels and the configured obstruction marking."""
    g = accumulate_grid(points, obs, cfg)
    label_density(g)
    if cfg.marking_mode is MarkingMode.SUBDIVISION:
        mark_obstructed_by_subdivision(g, obs)
    else:
        mark_obstructed_exact(g, obs)
    return g


def incremental_update(
    g: Grid, inserts: Sequence[Point] = (), deletes: Sequence[int] = ()
) -> Grid:
    """Apply point insertions and deletions in place.

    Affected cells are updated in O(changes); the density threshold is
    recomputed from the new N and all density labels refreshed (O(m)).
    Obstruction labels are untouched (obstacles are static). The result is
    indistinguishable from a full rebuild with the final point set. All
    inputs are validated before anything is mutated.
    """
    area = g.config.area
    outside = [i for i, p in enumerate(inserts) if not area.contains(p)]
    if outside:
        raise PointOutsideArea(outside)
    pending = set(g.points)
    for point_id in deletes:
        if point_id not in pending:
            raise UnknownPointId(point_id)
        pending.discard(point_id)

    for point_id in deletes:
        g._remove_point(point_id)
    for p in inserts:
        g._add_point(g._next_id, p)
        g._next_id += 1

    g.recompute_threshold()
    label_density(g)
    return g
