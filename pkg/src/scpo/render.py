"""Deterministic SVG cluster map.

The map shows the grid lines, obstructed cells (hatched), obstacle polygons
(filled), the points colored by region (outliers gray), and each region
center as a cross. The SVG is assembled from formatted strings only, so
identical inputs produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path

from .clustering import ClusteringResult
from .geometry import ObstacleSet
from .grid import Grid
from .io import write_text_atomic

CANVAS = 800.0
MARGIN = 24.0

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
)
OUTLIER_COLOR = "#999999"


def region_color(region_id: int) -> str:
    return PALETTE[region_id % len(PALETTE)]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def svg_document(result: ClusteringResult, g: Grid, obs: ObstacleSet) -> str:
    """Render the cluster map as an SVG string."""
    area = g.config.area
    scale = (CANVAS - 2 * MARGIN) / max(area.width, area.height)
    width = area.width * scale + 2 * MARGIN
    height = area.height * scale + 2 * MARGIN

    def tx(x: float) -> float:
        return MARGIN + (x - area.x_lo) * scale

    def ty(y: float) -> float:
        # SVG y grows downward
        return height - MARGIN - (y - area.y_lo) * scale

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )
    out.append(
        '<defs><pattern id="hatch" width="6" height="6" patternUnits="userSpaceOnUse" '
        'patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="6" '
        'stroke="#c0392b" stroke-width="1.5"/></pattern></defs>'
    )
    out.append(f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="#ffffff"/>')

    for cell in g.iter_cells():
        if cell.obstructed:
            ext = cell.extent
            out.append(
                f'<rect x="{_fmt(tx(ext.x_lo))}" y="{_fmt(ty(ext.y_hi))}" '
                f'width="{_fmt(ext.width * scale)}" height="{_fmt(ext.height * scale)}" '
                'fill="url(#hatch)" fill-opacity="0.5" stroke="none"/>'
            )

    w = g.w
    for i in range(w + 1):
        x = tx(area.x_lo + i * g.cell_width)
        out.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(ty(area.y_lo))}" x2="{_fmt(x)}" '
            f'y2="{_fmt(ty(area.y_hi))}" stroke="#dddddd" stroke-width="1"/>'
        )
        y = ty(area.y_lo + i * g.cell_height)
        out.append(
            f'<line x1="{_fmt(tx(area.x_lo))}" y1="{_fmt(y)}" x2="{_fmt(tx(area.x_hi))}" '
            f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="1"/>'
        )

    for poly in obs:
        pts = " ".join(f"{_fmt(tx(p.x))},{_fmt(ty(p.y))}" for p in poly.vertices)
        out.append(
            f'<polygon points="{pts}" fill="#34495e" fill-opacity="0.75" '
            'stroke="#2c3e50" stroke-width="1.5"/>'
        )

    point_radius = 3.0
    region_of: dict[int, int] = {}
    for r in result.regions:
        for pid in r.member_point_ids:
            region_of[pid] = r.id
    for pid in sorted(g.points):
        p = g.points[pid]
        rid = region_of.get(pid)
        color = OUTLIER_COLOR if rid is None else region_color(rid)
        out.append(
            f'<circle cx="{_fmt(tx(p.x))}" cy="{_fmt(ty(p.y))}" r="{point_radius}" '
            f'fill="{color}" fill-opacity="0.85"/>'
        )

    arm = 7.0
    for r in result.regions:
        if r.center is None:
            continue
        cx, cy = tx(r.center.x), ty(r.center.y)
        color = region_color(r.id)
        out.append(
            f'<line x1="{_fmt(cx - arm)}" y1="{_fmt(cy)}" x2="{_fmt(cx + arm)}" '
            f'y2="{_fmt(cy)}" stroke="{color}" stroke-width="3"/>'
        )
        out.append(
            f'<line x1="{_fmt(cx)}" y1="{_fmt(cy - arm)}" x2="{_fmt(cx)}" '
            f'y2="{_fmt(cy + arm)}" stroke="{color}" stroke-width="3"/>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(
    result: ClusteringResult, g: Grid, obs: ObstacleSet, path: str | Path | None
) -> None:
    """Write the cluster map SVG; a None path writes nothing."""
    if path is None:
        return
    write_text_atomic(svg_document(result, g, obs), path)
