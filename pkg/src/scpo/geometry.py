"""2-D geometry kernel: orientation, segment intersection, ray-crossing
point-in-polygon, and rectangle/polygon overlap tests.

All predicates use exact floating-point sign tests: collinear means the cross
product is exactly zero, with no epsilon. Boundary contact is surfaced as an
explicit result (``ON_BOUNDARY``, ``TOUCHING``) instead of being absorbed into
fuzzy comparisons, and callers that need a boolean treat ``ON_BOUNDARY`` as
not inside.

Everything here is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

from .errors import InvalidPolygon


class Orientation(Enum):
    CLOCKWISE = "clockwise"
    COUNTER_CLOCKWISE = "counter_clockwise"
    COLLINEAR = "collinear"


class SegmentRelation(Enum):
    NONE = "none"
    PROPER = "proper"
    TOUCHING = "touching"


class PointLocation(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_BOUNDARY = "on_boundary"


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"degenerate segment at {self.a}")

    @property
    def length(self) -> float:
        return math.hypot(self.b.x - self.a.x, self.b.y - self.a.y)

    @property
    def midpoint(self) -> Point:
        return Point((self.a.x + self.b.x) / 2.0, (self.a.y + self.b.y) / 2.0)


@dataclass(frozen=True, slots=True)
class Rect:
    x_lo: float
    y_lo: float
    x_hi: float
    y_hi: float

    def __post_init__(self) -> None:
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise ValueError(f"rectangle must have positive extent, got {self}")

    @property
    def width(self) -> float:
        return self.x_hi - self.x_lo

    @property
    def height(self) -> float:
        return self.y_hi - self.y_lo

    @property
    def center(self) -> Point:
        return Point((self.x_lo + self.x_hi) / 2.0, (self.y_lo + self.y_hi) / 2.0)

    def contains(self, p: Point) -> bool:
        """Closed containment: boundary points count as contained."""
        return self.x_lo <= p.x <= self.x_hi and self.y_lo <= p.y <= self.y_hi

    def corners(self) -> tuple[Point, Point, Point, Point]:
        return (
            Point(self.x_lo, self.y_lo),
            Point(self.x_hi, self.y_lo),
            Point(self.x_hi, self.y_hi),
            Point(self.x_lo, self.y_hi),
        )


class Polygon:
    """Simple polygon, normalized to counter-clockwise vertex order.

    The vertex ring is open (the first vertex is not repeated at the end).
    Construction rejects rings with fewer than 3 vertices, consecutive
    duplicate vertices, zero area, or self-intersections. Input listed
    clockwise is reversed, keeping the first vertex first.
    """

    __slots__ = ("vertices", "coords", "bbox")

    def __init__(self, vertices: Sequence[Point]):
        vs = tuple(vertices)
        if len(vs) < 3:
            raise InvalidPolygon(f"polygon needs at least 3 vertices, got {len(vs)}")
        n = len(vs)
        for i in range(n):
            if vs[i] == vs[(i + 1) % n]:
                raise InvalidPolygon(f"repeated vertex at position {i}: {vs[i]}")
        area2 = _twice_signed_area(vs)
        if area2 == 0.0:
            raise InvalidPolygon("polygon has zero area")
        if area2 < 0.0:
            # reverse to counter-clockwise, keeping the first vertex first
            vs = (vs[0],) + tuple(reversed(vs[1:]))
        _check_simple(vs)
        self.vertices: tuple[Point, ...] = vs
        self.coords: tuple[tuple[float, float], ...] = tuple((p.x, p.y) for p in vs)
        xs = [p.x for p in vs]
        ys = [p.y for p in vs]
        self.bbox = Rect(min(xs), min(ys), max(xs), max(ys))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Polygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"Polygon({list(self.vertices)!r})"

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> float:
        return _twice_signed_area(self.vertices) / 2.0

    def edges(self) -> Iterator[Segment]:
        n = len(self.vertices)
        for i in range(n):
            yield Segment(self.vertices[i], self.vertices[(i + 1) % n])

    def edge_coords(self) -> Iterator[tuple[float, float, float, float]]:
        """Edge endpoints as flat coordinate tuples, for hot loops."""
        coords = self.coords
        ax, ay = coords[-1]
        for bx, by in coords:
            yield ax, ay, bx, by
            ax, ay = bx, by


@dataclass(frozen=True)
class ObstacleSet:
    """An ordered collection of polygonal obstacles.

    Obstacles may overlap each other; every predicate quantifies over the
    set, so no union geometry is ever computed.
    """

    obstacles: tuple[Polygon, ...] = ()

    @classmethod
    def of(cls, *polygons: Polygon) -> "ObstacleSet":
        return cls(tuple(polygons))

    @property
    def total_vertex_count(self) -> int:
        return sum(len(p) for p in self.obstacles)

    def __len__(self) -> int:
        return len(self.obstacles)

    def __iter__(self) -> Iterator[Polygon]:
        return iter(self.obstacles)

    @property
    def is_empty(self) -> bool:
        return not self.obstacles


def _cross(ox: float, oy: float, ax: float, ay: float, bx: float, by: float) -> float:
    """Cross product of (a - o) x (b - o)."""
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _twice_signed_area(vs: Sequence[Point]) -> float:
    total = 0.0
    n = len(vs)
    for i in range(n):
        p, q = vs[i], vs[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total


def _on_segment(px: float, py: float, ax: float, ay: float, bx: float, by: float) -> bool:
    """True iff (px, py) lies on the closed segment (a, b)."""
    if _cross(ax, ay, bx, by, px, py) != 0.0:
        return False
    return (
        min(ax, bx) <= px <= max(ax, bx)
        and min(ay, by) <= py <= max(ay, by)
    )


def _segments_relation(
    ax: float, ay: float, bx: float, by: float,
    cx: float, cy: float, dx: float, dy: float,
) -> SegmentRelation:
    d1 = _cross(cx, cy, dx, dy, ax, ay)
    d2 = _cross(cx, cy, dx, dy, bx, by)
    d3 = _cross(ax, ay, bx, by, cx, cy)
    d4 = _cross(ax, ay, bx, by, dx, dy)
    if ((d1 > 0.0 and d2 < 0.0) or (d1 < 0.0 and d2 > 0.0)) and (
        (d3 > 0.0 and d4 < 0.0) or (d3 < 0.0 and d4 > 0.0)
    ):
        return SegmentRelation.PROPER
    if (
        _on_segment(ax, ay, cx, cy, dx, dy)
        or _on_segment(bx, by, cx, cy, dx, dy)
        or _on_segment(cx, cy, ax, ay, bx, by)
        or _on_segment(dx, dy, ax, ay, bx, by)
    ):
        return SegmentRelation.TOUCHING
    return SegmentRelation.NONE


def _check_simple(vs: tuple[Point, ...]) -> None:
    n = len(vs)
    # fold-backs between consecutive edges: the far endpoint of one edge may
    # not lie on the other edge
    for i in range(n):
        u, v, w = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
        if _on_segment(w.x, w.y, u.x, u.y, v.x, v.y) or _on_segment(u.x, u.y, v.x, v.y, w.x, w.y):
            raise InvalidPolygon(f"edges around vertex {(i + 1) % n} fold back on each other")
    # non-adjacent edges may not intersect at all
    for i in range(n):
        a, b = vs[i], vs[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            c, d = vs[j], vs[(j + 1) % n]
            if _segments_relation(a.x, a.y, b.x, b.y, c.x, c.y, d.x, d.y) is not SegmentRelation.NONE:
                raise InvalidPolygon(f"self-intersection between edges {i} and {j}")


def orientation(p: Point, q: Point, r: Point) -> Orientation:
    """Turn direction of the triple (p, q, r); collinear iff the cross
    product is exactly zero."""
    c = _cross(p.x, p.y, q.x, q.y, r.x, r.y)
    if c > 0.0:
        return Orientation.COUNTER_CLOCKWISE
    if c < 0.0:
        return Orientation.CLOCKWISE
    return Orientation.COLLINEAR


def segments_intersect(s1: Segment, s2: Segment) -> SegmentRelation:
    """Classify how two segments meet.

    ``PROPER`` means the interiors cross transversally; ``TOUCHING`` covers
    endpoint contact and collinear overlap; ``NONE`` means disjoint.
    """
    return _segments_relation(
        s1.a.x, s1.a.y, s1.b.x, s1.b.y,
        s2.a.x, s2.a.y, s2.b.x, s2.b.y,
    )


def _point_location(px: float, py: float, poly: Polygon) -> PointLocation:
    bb = poly.bbox
    if px < bb.x_lo or px > bb.x_hi or py < bb.y_lo or py > bb.y_hi:
        return PointLocation.OUTSIDE
    # boundary pre-pass: exact on-edge test before any parity counting
    for ax, ay, bx, by in poly.edge_coords():
        if _on_segment(px, py, ax, ay, bx, by):
            return PointLocation.ON_BOUNDARY
    # ray crossings: horizontal ray in +x; an edge counts iff one endpoint is
    # strictly above the ray and the other at or below
    inside = False
    for ax, ay, bx, by in poly.edge_coords():
        if (ay > py) != (by > py):
            x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
            if x_cross > px:
                inside = not inside
    return PointLocation.INSIDE if inside else PointLocation.OUTSIDE


def point_in_polygon(p: Point, poly: Polygon) -> PointLocation:
    """Ray-crossing point-in-polygon test with an explicit boundary class.

    Points exactly on an edge or vertex are ``ON_BOUNDARY``; otherwise the
    crossing parity of a horizontal +x ray decides inside/outside.
    """
    return _point_location(p.x, p.y, poly)


def strictly_inside_any(p: Point, obs: ObstacleSet) -> bool:
    """True iff p is strictly inside at least one obstacle (boundary is not
    inside)."""
    for poly in obs:
        if _point_location(p.x, p.y, poly) is PointLocation.INSIDE:
            return True
    return False


def _segment_blocked_coords(ax: float, ay: float, bx: float, by: float, obs: ObstacleSet) -> bool:
    sx_lo, sx_hi = (ax, bx) if ax <= bx else (bx, ax)
    sy_lo, sy_hi = (ay, by) if ay <= by else (by, ay)
    mx, my = (ax + bx) / 2.0, (ay + by) / 2.0
    for poly in obs:
        bb = poly.bbox
        if sx_hi < bb.x_lo or sx_lo > bb.x_hi or sy_hi < bb.y_lo or sy_lo > bb.y_hi:
            continue
        along_boundary = False
        for cx, cy, dx, dy in poly.edge_coords():
            if _segments_relation(ax, ay, bx, by, cx, cy, dx, dy) is SegmentRelation.PROPER:
                return True
            # a segment contained in one polygon edge runs along the
            # boundary; its true midpoint is on the boundary even when the
            # floating-point midpoint drifts a bit to the inside
            if not along_boundary and _on_segment(ax, ay, cx, cy, dx, dy) and _on_segment(
                bx, by, cx, cy, dx, dy
            ):
                along_boundary = True
        if along_boundary:
            continue
        # catches segments inside a polygon that only touch its boundary at
        # their endpoints (e.g. a diagonal between two vertices)
        if _point_location(mx, my, poly) is PointLocation.INSIDE:
            return True
    return False


def segment_blocked(s: Segment, obs: ObstacleSet) -> bool:
    """True iff the segment properly crosses an obstacle edge or its midpoint
    is strictly inside an obstacle."""
    return _segment_blocked_coords(s.a.x, s.a.y, s.b.x, s.b.y, obs)


def rect_intersects_polygon(r: Rect, poly: Polygon) -> bool:
    """Exact closed-region intersection test for a rectangle and a simple
    polygon.

    True iff any polygon edge meets any rectangle edge (properly or
    touching), any rectangle corner is inside or on the polygon, or any
    polygon vertex is inside or on the rectangle.
    """
    bb = poly.bbox
    if bb.x_hi < r.x_lo or bb.x_lo > r.x_hi or bb.y_hi < r.y_lo or bb.y_lo > r.y_hi:
        return False
    corners = r.corners()
    rect_edges = [
        (corners[i].x, corners[i].y, corners[(i + 1) % 4].x, corners[(i + 1) % 4].y)
        for i in range(4)
    ]
    for ax, ay, bx, by in poly.edge_coords():
        for cx, cy, dx, dy in rect_edges:
            if _segments_relation(ax, ay, bx, by, cx, cy, dx, dy) is not SegmentRelation.NONE:
                return True
    for corner in corners:
        if _point_location(corner.x, corner.y, poly) is not PointLocation.OUTSIDE:
            return True
    for p in poly.vertices:
        if r.contains(p):
            return True
    return False


def euclidean(p: Point, q: Point) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)
