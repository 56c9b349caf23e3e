"""
Errors Module

Exception hierarchy for the curvature engine. Everything derives from
ValueError so callers that only guard against bad input keep working.

Usage:
    from core.errors import DegeneratePlaneError

    try:
        value = sectional_K(point, (u, v))
    except DegeneratePlaneError as e:
        logger.error(f"Plane rejected: {e}")
"""


class GeometryError(ValueError):
    """Base class for all invalid-geometry conditions raised by the engine."""


class InvalidDimensionError(GeometryError):
    """A dimension parameter (m, n, codimension) is out of range."""


class ShapeError(GeometryError):
    """Array shapes do not match the ambient or tangent dimension."""


class IndexRangeError(GeometryError):
    """A structure index or tangent index is out of range."""


class DegenerateFrameError(GeometryError):
    """Vectors handed to Gram-Schmidt are (numerically) linearly dependent."""


class DegeneratePlaneError(GeometryError):
    """The two vectors spanning a plane are (numerically) parallel."""


class InvalidTangentError(GeometryError):
    """A vector expected to be a unit tangent vector is not."""


class PreconditionError(GeometryError):
    """A theorem checker was called outside its hypotheses (e.g. sign of c)."""


class PointValidationError(GeometryError):
    """A SubmanifoldPoint failed validation; carries the diagnostic report."""

    def __init__(self, message: str, report: dict = None):
        super().__init__(message)
        self.report = report or {}
