"""Domain errors for the psychosocial module."""

from typing import Any

from src.shared.domain.errors import DomainError


class PsychosocialError(DomainError):
    """Base class for psychosocial domain errors."""

    def __init__(
        self,
        message: str,
        code: str = "PSYCHOSOCIAL_ERROR",
        exit_code: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message=message, code=code, exit_code=exit_code, details=details)


class FlexibilityParameterError(PsychosocialError):
    """Raised when a flexibility input (weights, ceiling, level) is out of range."""

    def __init__(self, message: str, field: str | None = None) -> None:
        details = {"field": field} if field else {}
        super().__init__(
            message=message,
            code="FLEXIBILITY_PARAMETER_ERROR",
            exit_code=1,
            details=details,
        )


class SurveyDataError(PsychosocialError):
    """Raised when survey scores or statistics are unusable."""

    def __init__(self, message: str, field: str | None = None) -> None:
        details = {"field": field} if field else {}
        super().__init__(
            message=message,
            code="SURVEY_DATA_ERROR",
            exit_code=1,
            details=details,
        )
