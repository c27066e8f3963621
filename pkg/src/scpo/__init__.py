"""Grid-based spatial clustering in the presence of polygonal obstacles.

The pipeline divides the spatial area into a rectangular cell grid, labels
cells dense/non-dense and obstructed/non-obstructed, grows maximal connected
regions of dense non-obstructed cells by breadth-first search, and finds a
center for each region, falling back to obstructed (shortest obstacle-
avoiding path) distances when the plain mean lands inside an obstacle.
"""

from .clustering import (
    CenterKind,
    ClusteringResult,
    Diagnostics,
    Region,
    find_center,
    find_regions,
    region_cost,
    region_mean,
    run_scpo,
)
from .errors import (
    ConfigError,
    EmptyDataset,
    EmptyRegion,
    InputError,
    InvalidPolygon,
    ParseError,
    PointInsideObstacle,
    PointOutsideArea,
    ScpoError,
    UnknownPointId,
    UnknownScenario,
    Unreachable,
)
from .geometry import (
    ObstacleSet,
    Orientation,
    Point,
    PointLocation,
    Polygon,
    Rect,
    Segment,
    SegmentRelation,
    euclidean,
    orientation,
    point_in_polygon,
    rect_intersects_polygon,
    segment_blocked,
    segments_intersect,
    strictly_inside_any,
)
from .grid import (
    Cell,
    Connectivity,
    Grid,
    GridConfig,
    MarkingMode,
    build_grid,
    incremental_update,
    label_density,
    mark_obstructed_by_subdivision,
    mark_obstructed_exact,
    subdivision_sample_points,
)
from .visibility import (
    PathResult,
    VisibilityGraph,
    build_visibility_graph,
    mutually_visible,
    obstructed_distance,
)

__version__ = "0.1.0"

__all__ = [
    "CenterKind",
    "Cell",
    "ClusteringResult",
    "ConfigError",
    "Connectivity",
    "Diagnostics",
    "EmptyDataset",
    "EmptyRegion",
    "Grid",
    "GridConfig",
    "InputError",
    "InvalidPolygon",
    "MarkingMode",
    "ObstacleSet",
    "Orientation",
    "ParseError",
    "PathResult",
    "Point",
    "PointInsideObstacle",
    "PointLocation",
    "PointOutsideArea",
    "Polygon",
    "Rect",
    "Region",
    "ScpoError",
    "Segment",
    "SegmentRelation",
    "UnknownPointId",
    "UnknownScenario",
    "Unreachable",
    "VisibilityGraph",
    "build_grid",
    "build_visibility_graph",
    "euclidean",
    "find_center",
    "find_regions",
    "incremental_update",
    "label_density",
    "mark_obstructed_by_subdivision",
    "mark_obstructed_exact",
    "mutually_visible",
    "obstructed_distance",
    "orientation",
    "point_in_polygon",
    "rect_intersects_polygon",
    "region_cost",
    "region_mean",
    "run_scpo",
    "segment_blocked",
    "segments_intersect",
    "strictly_inside_any",
    "subdivision_sample_points",
]
