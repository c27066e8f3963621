"""Matplotlib report figures written next to the machine-readable outputs:
a cluster map for the ``cluster`` command and stage scaling curves for the
``bench`` command."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .clustering import ClusteringResult
from .geometry import ObstacleSet
from .grid import Grid
from .render import OUTLIER_COLOR, region_color


def save_cluster_figure(
    result: ClusteringResult, g: Grid, obs: ObstacleSet, path: str | Path
) -> None:
    """Cluster map as a raster/vector figure: points colored by region,
    outliers gray, obstacles filled, obstructed cells shaded, centers as X."""
    area = g.config.area
    fig, ax = plt.subplots(figsize=(7.5, 7.5 * area.height / area.width))

    for cell in g.iter_cells():
        if cell.obstructed:
            ext = cell.extent
            ax.add_patch(
                Rectangle(
                    (ext.x_lo, ext.y_lo), ext.width, ext.height,
                    facecolor="#e74c3c", alpha=0.15, edgecolor="none",
                )
            )
    for poly in obs:
        xs = [p.x for p in poly.vertices]
        ys = [p.y for p in poly.vertices]
        ax.fill(xs, ys, facecolor="#34495e", alpha=0.8, edgecolor="#2c3e50", zorder=3)

    region_of: dict[int, int] = {}
    for r in result.regions:
        for pid in r.member_point_ids:
            region_of[pid] = r.id
    by_region: dict[int | None, list[tuple[float, float]]] = {}
    for pid, p in g.points.items():
        by_region.setdefault(region_of.get(pid), []).append((p.x, p.y))
    for rid, pts in sorted(by_region.items(), key=lambda kv: (kv[0] is None, kv[0])):
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        if rid is None:
            ax.scatter(xs, ys, s=10, c=OUTLIER_COLOR, label="outliers", zorder=2)
        else:
            ax.scatter(xs, ys, s=10, c=region_color(rid), label=f"region {rid}", zorder=2)
    for r in result.regions:
        if r.center is not None:
            ax.scatter(
                [r.center.x], [r.center.y], marker="X", s=140,
                c=region_color(r.id), edgecolors="black", zorder=4,
            )

    for i in range(g.w + 1):
        ax.axvline(area.x_lo + i * g.cell_width, color="#dddddd", lw=0.5, zorder=1)
        ax.axhline(area.y_lo + i * g.cell_height, color="#dddddd", lw=0.5, zorder=1)
    ax.set_xlim(area.x_lo, area.x_hi)
    ax.set_ylim(area.y_lo, area.y_hi)
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title(f"{len(result.regions)} region(s), {len(result.outlier_point_ids)} outlier(s)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bench_figure(report: dict[str, Any], path: str | Path) -> None:
    """Per-stage wall time vs dataset size, log-log, with a linear
    reference."""
    stages: dict[str, list[tuple[int, float]]] = {}
    for row in report["rows"]:
        stages.setdefault(row["stage"], []).append((row["n"], row["seconds"]))

    fig, ax = plt.subplots(figsize=(7, 5))
    for stage, rows in stages.items():
        rows.sort()
        ax.plot([n for n, _ in rows], [s for _, s in rows], marker="o", label=stage)
    ns = sorted({row["n"] for row in report["rows"]})
    if ns:
        grid_rows = sorted(stages.get("grid_pass", []))
        anchor = grid_rows[0][1] if grid_rows else 1e-3
        ax.plot(ns, [anchor * n / ns[0] for n in ns], "k--", lw=1, label="linear reference")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("points (N)")
    ax.set_ylabel("wall time per run [s]")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
