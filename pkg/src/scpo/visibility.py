"""Visibility graph over obstacle vertices and obstructed-distance queries.

The graph is built once per obstacle set and reused across all queries; a
two-point query augments it with the query endpoints locally, without
mutating the shared graph. Shortest paths are found with Dijkstra's
algorithm, breaking distance ties by smallest vertex index so that the
returned waypoints are deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

from .errors import PointInsideObstacle, Unreachable
from .geometry import (
    ObstacleSet,
    Point,
    Segment,
    _segment_blocked_coords,
    euclidean,
    segment_blocked,
    strictly_inside_any,
)


@dataclass(frozen=True)
class PathResult:
    """A shortest obstacle-avoiding path: total length plus the waypoints
    from source to target (source and target included)."""

    length: float
    waypoints: tuple[Point, ...]


@dataclass(frozen=True)
class VisibilityGraph:
    """Graph on all obstacle vertices; an edge joins each mutually visible
    pair and is weighted by Euclidean length.

    ``vertices`` lists the obstacle vertices in obstacle order, each polygon
    in its normalized counter-clockwise order, so indices are deterministic.
    ``adjacency[i]`` holds ``(neighbor_index, weight)`` pairs in ascending
    neighbor order.
    """

    vertices: tuple[Point, ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...]
    obstacles: ObstacleSet

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2


def mutually_visible(p: Point, q: Point, obs: ObstacleSet) -> bool:
    """True iff the open segment between p and q is not blocked by any
    obstacle. p and q must be distinct and not strictly inside an obstacle."""
    return not segment_blocked(Segment(p, q), obs)


def build_visibility_graph(obs: ObstacleSet) -> VisibilityGraph:
    """Build the visibility graph over all obstacle vertices.

    Runs the pairwise visibility predicate on every vertex pair. Vertex
    pairs with identical coordinates (possible when obstacles overlap) get
    no edge. An empty obstacle set yields an empty graph.
    """
    verts: list[Point] = [v for poly in obs for v in poly.vertices]
    n = len(verts)
    adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for i in range(n):
        vi = verts[i]
        for j in range(i + 1, n):
            vj = verts[j]
            if vi == vj:
                continue
            if not _segment_blocked_coords(vi.x, vi.y, vj.x, vj.y, obs):
                w = euclidean(vi, vj)
                adjacency[i].append((j, w))
                adjacency[j].append((i, w))
    return VisibilityGraph(
        vertices=tuple(verts),
        adjacency=tuple(tuple(neighbors) for neighbors in adjacency),
        obstacles=obs,
    )


def obstructed_distance(p: Point, q: Point, g: VisibilityGraph) -> PathResult:
    """Length and waypoints of the shortest obstacle-avoiding path p -> q.

    The query augments the shared graph with p and q (visibility edges from
    each to every graph vertex); if p and q see each other the straight
    segment is returned directly. Raises ``PointInsideObstacle`` if either
    endpoint is strictly inside an obstacle and ``Unreachable`` if no path
    exists.
    """
    obs = g.obstacles
    for name, pt in (("source", p), ("target", q)):
        if strictly_inside_any(pt, obs):
            raise PointInsideObstacle(f"{name} point {pt} is strictly inside an obstacle")
    if p == q:
        return PathResult(0.0, (p,))
    if mutually_visible(p, q, obs):
        return PathResult(euclidean(p, q), (p, q))

    n = len(g.vertices)
    source, target = n, n + 1
    from_p: list[tuple[int, float]] = []
    to_q: dict[int, float] = {}
    for i, v in enumerate(g.vertices):
        if v != p and not _segment_blocked_coords(p.x, p.y, v.x, v.y, obs):
            from_p.append((i, euclidean(p, v)))
        elif v == p:
            # p coincides with a vertex: inherit its adjacency at zero cost
            from_p.extend(g.adjacency[i])
        if v != q and not _segment_blocked_coords(q.x, q.y, v.x, v.y, obs):
            to_q[i] = euclidean(q, v)
        elif v == q:
            for j, w in g.adjacency[i]:
                prior = to_q.get(j)
                if prior is None or w < prior:
                    to_q[j] = w

    dist = [math.inf] * (n + 2)
    prev = [-1] * (n + 2)
    dist[source] = 0.0
    heap: list[tuple[float, int]] = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        if u == target:
            break
        if u == source:
            neighbors = from_p
        else:
            neighbors = list(g.adjacency[u])
            wq = to_q.get(u)
            if wq is not None:
                neighbors.append((target, wq))
        for v_idx, w in neighbors:
            nd = d + w
            if nd < dist[v_idx]:
                dist[v_idx] = nd
                prev[v_idx] = u
                heapq.heappush(heap, (nd, v_idx))

    if not math.isfinite(dist[target]):
        raise Unreachable(f"no obstacle-avoiding path from {p} to {q}")

    indices: list[int] = []
    node = target
    while node != -1:
        indices.append(node)
        node = prev[node]
    indices.reverse()
    waypoints = tuple(
        p if i == source else q if i == target else g.vertices[i] for i in indices
    )
    return PathResult(dist[target], waypoints)
