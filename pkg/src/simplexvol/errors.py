"""Exception types shared across the library."""


class SimplexVolError(Exception):
    """Base class for all library-specific errors."""


class OverflowRegionError(SimplexVolError):
    """Argument lies in a growth sector where the result would overflow a double."""


class SectorError(SimplexVolError):
    """Argument lies outside the sectors supported by the requested evaluation path."""


class ToleranceError(SimplexVolError):
    """Requested tolerance could not be met; carries the best available result."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NearPoleError(SimplexVolError):
    """Evaluation point is too close to an excluded pole of the integral representation."""


class GeometryDomainError(SimplexVolError):
    """Geometric inputs violate a domain constraint (curvature bound, side length, ...)."""


class RankDeficiencyError(SimplexVolError):
    """Vertex construction produced a degenerate (rank-deficient) configuration."""


class CostLimitError(SimplexVolError):
    """Requested computation exceeds the supported cost envelope (e.g. dimension cap)."""
