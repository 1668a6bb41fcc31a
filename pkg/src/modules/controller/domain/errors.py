"""Domain errors for the controller module."""

from src.shared.domain.errors import DomainError


class GainError(DomainError):
    """Raised when a controller time constant is not strictly positive."""

    def __init__(self, message: str, field: str | None = None) -> None:
        details = {"field": field} if field else {}
        super().__init__(
            message=message,
            code="GAIN_ERROR",
            exit_code=1,
            details=details,
        )
