"""Exception hierarchy shared by all geometry routines."""


class GeometryError(ValueError):
    pass


class DegenerateDirection(GeometryError):
    pass


class NoSecondHit(GeometryError):
    pass


class Degenerate(GeometryError):
    """Point set is not full-dimensional."""


class OnBoundaryPlane(GeometryError):
    pass


class RegionBoundary(GeometryError):
    """Light source lies on the trace of a facet plane."""


class Inside(GeometryError):
    pass


class Collinear(GeometryError):
    pass


class DegenerateVertex(GeometryError):
    pass


class InteriorPoint(GeometryError):
    pass


class NotACap(GeometryError):
    """Projection of a ball is a cap only when its center is on the diameter through z."""


class ApexMismatch(GeometryError):
    pass


class RadiusMismatch(GeometryError):
    pass


class SearchBudgetExceeded(GeometryError):
    pass


class FitFailed(GeometryError):
    pass


class AngleOutOfRange(GeometryError):
    pass


class OnPlane(GeometryError):
    pass


class UnstableRegion(GeometryError):
    pass


class DegenerateSegment(GeometryError):
    pass


class NoConvergence(GeometryError):
    pass


class SceneError(GeometryError):
    pass
