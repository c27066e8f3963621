"""File ingestion and the JSON output document.

Points are delimiter-separated text, one ``x,y`` pair per line; ``#`` lines
and blank lines are skipped and data lines are numbered 0, 1, ... to form the
point ids. Obstacles are a JSON array of polygons, each an array of [x, y]
vertex pairs (open rings). The result document is a single JSON file with a
frozen ``schema_version`` and a canonical serialization that round-trips
byte-identically.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .clustering import ClusteringResult
from .errors import EmptyDataset, InvalidPolygon, ParseError
from .geometry import ObstacleSet, Point, Polygon
from .grid import Grid

SCHEMA_VERSION = 1


def ingest_points(path: str | Path) -> list[Point]:
    """Parse a points file into a list of Points; ids are the data-line
    ordinals."""
    points: list[Point] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(f"expected 'x,y', got {line!r}", line=lineno)
            try:
                x, y = float(parts[0]), float(parts[1])
            except ValueError:
                raise ParseError(f"non-numeric coordinate in {line!r}", line=lineno) from None
            try:
                points.append(Point(x, y))
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from None
    if not points:
        raise EmptyDataset(f"no data lines in {path}")
    return points


def ingest_obstacles(path: str | Path) -> ObstacleSet:
    """Parse an obstacles JSON file and validate every polygon."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(data, list):
        raise ParseError(f"expected a top-level array of polygons in {path}")
    polygons: list[Polygon] = []
    for i, ring in enumerate(data):
        if not isinstance(ring, list):
            raise ParseError(f"obstacle {i} is not an array of [x, y] pairs")
        vertices: list[Point] = []
        for v in ring:
            if not (isinstance(v, list) and len(v) == 2):
                raise ParseError(f"obstacle {i} has a vertex that is not an [x, y] pair")
            try:
                vertices.append(Point(float(v[0]), float(v[1])))
            except (TypeError, ValueError) as exc:
                raise ParseError(f"obstacle {i}: {exc}") from None
        try:
            polygons.append(Polygon(vertices))
        except InvalidPolygon as exc:
            raise InvalidPolygon(exc.reason, index=i) from None
    return ObstacleSet(tuple(polygons))


def write_text_atomic(text: str, path: str | Path) -> None:
    """Write text via a temp file in the same directory plus rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def build_output_document(
    result: ClusteringResult, g: Grid, config_echo: dict[str, Any]
) -> dict[str, Any]:
    """Assemble the result document: config echo, grid summary, regions,
    outliers, and diagnostics."""
    regions = [
        {
            "id": r.id,
            "cells": [[row, col] for row, col in r.cell_indices],
            "point_ids": list(r.member_point_ids),
            "center": [r.center.x, r.center.y] if r.center is not None else None,
            "center_kind": r.center_kind.value if r.center_kind is not None else None,
        }
        for r in result.regions
    ]
    diagnostics = {
        "warnings": list(result.diagnostics.warnings),
        "points_in_obstacles": sorted(g.points_in_obstacles),
        "timings": result.diagnostics.timings,
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "config": config_echo,
        "grid": {
            "w": g.w,
            "d": g.d,
            "e": g.e,
            "n_points": g.n_points,
            "dense_cells": result.diagnostics.dense_cells,
            "obstructed_cells": result.diagnostics.obstructed_cells,
        },
        "regions": regions,
        "outliers": list(result.outlier_point_ids),
        "diagnostics": diagnostics,
    }


def serialize_document(doc: dict[str, Any]) -> str:
    """Canonical serialization: loading the output and re-serializing it is
    byte-identical."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_output_document(doc: dict[str, Any], path: str | Path) -> None:
    write_text_atomic(serialize_document(doc), path)


def load_output_document(path: str | Path) -> dict[str, Any]:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
