"""Exception hierarchy for the scpo package.

``InputError`` subclasses mark problems with user-supplied data or
configuration (CLI exit code 1); everything else under ``ScpoError`` is an
internal/contract failure (CLI exit code 2).
"""

from __future__ import annotations


class ScpoError(Exception):
    """Base class for all scpo errors."""


class InputError(ScpoError):
    """Invalid user input: files, flags, or configuration."""


class ConfigError(InputError):
    """Invalid grid or run configuration."""


class ParseError(InputError):
    """Malformed input file; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyDataset(InputError):
    """A points file contained no data lines."""


class InvalidPolygon(InputError):
    """A polygon violates a construction invariant."""

    def __init__(self, reason: str, index: int | None = None):
        self.reason = reason
        self.index = index
        if index is not None:
            reason = f"obstacle {index}: {reason}"
        super().__init__(reason)


class PointOutsideArea(InputError):
    """One or more points fall outside the configured spatial area."""

    def __init__(self, indices: list[int]):
        self.indices = list(indices)
        shown = ", ".join(str(i) for i in self.indices[:10])
        more = "" if len(self.indices) <= 10 else f" (+{len(self.indices) - 10} more)"
        super().__init__(f"points outside the spatial area at indices: {shown}{more}")


class UnknownPointId(InputError):
    """A delete referenced a point id that does not exist."""

    def __init__(self, point_id: int):
        self.point_id = point_id
        super().__init__(f"unknown point id: {point_id}")


class UnknownScenario(InputError):
    """Requested synthetic scenario name is not defined."""


class PointInsideObstacle(ScpoError):
    """A distance query endpoint lies strictly inside an obstacle."""


class Unreachable(ScpoError):
    """No obstacle-avoiding path exists between the query points."""


class EmptyRegion(ScpoError):
    """A region holds no points, so no center can be computed."""
