"""Domain errors for the welfare module."""

from typing import Any

from src.shared.domain.errors import DomainError


class WelfareError(DomainError):
    """Base class for welfare domain errors."""

    def __init__(
        self,
        message: str,
        code: str = "WELFARE_ERROR",
        exit_code: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message=message, code=code, exit_code=exit_code, details=details)


class WelfareParameterError(WelfareError):
    """Raised when a welfare coefficient or weight is outside its domain."""

    def __init__(self, message: str, field: str | None = None) -> None:
        """
        Initialize welfare parameter error.

        Args:
            message: Description of the violated constraint
            field: The offending parameter (optional)
        """
        details = {"field": field} if field else {}
        super().__init__(
            message=message,
            code="WELFARE_PARAMETER_ERROR",
            exit_code=1,
            details=details,
        )


class DegenerateProblemError(WelfareError):
    """Raised when the welfare problem has no unique solution."""

    def __init__(self, reason: str) -> None:
        super().__init__(
            message=f"Degenerate welfare problem: {reason}",
            code="DEGENERATE_PROBLEM",
            exit_code=1,
            details={"reason": reason},
        )


class InfeasibleProblemError(WelfareError):
    """Raised when no activity pattern of a quadratic program satisfies its KKT conditions."""

    def __init__(self, patterns_tried: int) -> None:
        super().__init__(
            message=f"No feasible optimal point found after {patterns_tried} activity patterns",
            code="INFEASIBLE_PROBLEM",
            exit_code=1,
            details={"patterns_tried": patterns_tried},
        )
