"""Exception types shared across the package."""
from __future__ import annotations


class GrapeError(Exception):
    """Base class for all package errors."""


class ParseError(GrapeError):
    """Malformed line or token in a graph / polynomial document."""


class ValidationError(GrapeError):
    """Structurally invalid graph data."""


class EdgeNotFound(GrapeError):
    """Requested stem edge does not exist."""


class LoopCut(GrapeError):
    """A loop was passed where a stem edge is required."""


class TrivialGraph(GrapeError):
    """Operation requires at least one essential vertex."""


class SingletonStem(GrapeError):
    """Operation requires the stem to have at least one edge."""


class NoEssentialVertex(GrapeError):
    """Canonical labeling needs an essential vertex."""


class InvalidShape(GrapeError):
    """(ell, m) outside the domain of an elementary-shape operation."""


class NonzeroResidual(GrapeError):
    """Series arithmetic requires exact (residual-free) tables."""


class DegreeUndefined(GrapeError):
    """Leading term requested where the polynomial vanishes."""


class NonIntegerRoot(GrapeError):
    """Local-data recovery hit a root that is not a valid integer datum."""


class InconsistentDegrees(GrapeError):
    """Polynomial sequence cannot come from any bunch of grapes."""


class RoundTripMismatch(GrapeError):
    """Recovered local data does not reproduce the input polynomials."""


class SizeExceeded(GrapeError):
    """Configuration size exceeds the requested weight."""


class CapExceeded(GrapeError):
    """Enumeration would produce more objects than the given cap."""


class InvalidConfig(GrapeError):
    """Configuration is not valid for the given graph."""


class DimensionMismatch(GrapeError):
    """Matrix dimensions are not compatible."""


class ResourceLimit(GrapeError):
    """A chain-complex slice exceeds the configured size bound."""
