"""Exception hierarchy for the toric engine."""

from typing import Optional


class WogToricError(Exception):
    """Base class for every error raised by the engine."""


class GraphValidationError(WogToricError, ValueError):
    """The graph input violates the weighted oriented graph invariants."""


class MatrixShapeError(WogToricError, ValueError):
    """Matrix or vector dimensions do not fit the requested operation."""


class ZeroVectorError(WogToricError, ValueError):
    """A nonzero vector was required."""


class NotInKernelError(WogToricError, ValueError):
    """A vector expected in ker(A) is not."""


class PreconditionError(WogToricError, ValueError):
    """Structural preconditions of a construction do not hold."""


class StructuralCriteriaError(PreconditionError):
    """The structural robustness criteria do not apply to the graph."""


class ConfigurationError(WogToricError, ValueError):
    """Invalid resource configuration."""


class ResourceCapExceeded(WogToricError, RuntimeError):
    """A computation grew beyond a configured resource cap."""

    def __init__(self, resource: str, limit: int, detail: Optional[str] = None) -> None:
        self.resource = resource
        self.limit = limit
        message = f"{resource} exceeded cap of {limit}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class InternalConsistencyError(WogToricError, RuntimeError):
    """An internal cross-check failed."""
