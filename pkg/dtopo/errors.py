"""
Exception hierarchy for dtopo.

Every domain error is a ValueError so callers that only care about bad
input can catch that; the CLI maps DtopoError to exit code 2.
"""

from typing import Any, List, Optional


class DtopoError(ValueError):
    """Base class for all domain errors."""


class ComplexError(DtopoError):
    """A complex is malformed or fails validation where validity is required."""


class ParameterError(DtopoError):
    """A builder name, bound or pool argument is unusable."""


class LoopError(DtopoError):
    """Path enumeration hit a directed loop without a length bound."""


class PathError(DtopoError):
    """An edge path operation got incompatible input."""


class BoundedModeError(DtopoError):
    """An exhaustive class table is required but the complex has loops."""


class AdmissibilityError(DtopoError):
    """A vertex map violates the edge or square condition."""


class WitnessError(DtopoError):
    """A homotopy witness assigns a path with the wrong endpoints."""

    def __init__(self, message: str, vertex: Optional[str] = None):
        super().__init__(message)
        self.vertex = vertex


class BudgetExceeded(DtopoError):
    """A search ran out of budget before it finished."""

    def __init__(self, explored: int, partial: Optional[List[Any]] = None):
        super().__init__(f"search budget exhausted after {explored} nodes")
        self.explored = explored
        self.partial = partial or []


class CertificateError(DtopoError):
    """A certificate is missing, malformed or does not re-validate."""


class MonoidError(DtopoError):
    """A monoid table is invalid or a check precondition fails."""


class CoverError(DtopoError):
    """No section cover exists within the patch bound."""

    def __init__(self, max_k: int):
        super().__init__(f"no consistent section cover with at most {max_k} patches")
        self.max_k = max_k
