"""Domain errors for the grid module."""

from typing import Any

from src.shared.domain.errors import DomainError


class GridError(DomainError):
    """Base class for grid domain errors."""

    def __init__(
        self,
        message: str,
        code: str = "GRID_ERROR",
        exit_code: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message=message, code=code, exit_code=exit_code, details=details)


class ParameterDomainError(GridError):
    """Raised when a physical parameter lies outside its admissible domain."""

    def __init__(self, message: str, field: str | None = None) -> None:
        """
        Initialize parameter domain error.

        Args:
            message: Description of the violated constraint
            field: The parameter that failed validation (optional)
        """
        details = {"field": field} if field else {}
        super().__init__(
            message=message,
            code="PARAMETER_DOMAIN_ERROR",
            exit_code=1,
            details=details,
        )


class StructuralError(GridError):
    """Raised when vector or matrix dimensions do not match the topology."""

    def __init__(self, what: str, expected: tuple[int, ...], actual: tuple[int, ...]) -> None:
        super().__init__(
            message=f"Dimension mismatch for {what}: expected {expected}, got {actual}",
            code="STRUCTURAL_ERROR",
            exit_code=1,
            details={"what": what, "expected": list(expected), "actual": list(actual)},
        )


class SingularSystemError(GridError):
    """Raised when a steady-state linear system cannot be solved."""

    def __init__(self, reason: str) -> None:
        super().__init__(
            message=f"Steady-state system is singular: {reason}",
            code="SINGULAR_SYSTEM",
            exit_code=2,
            details={"reason": reason},
        )
