"""Base error shared by every bounded context."""

from typing import Any


class DomainError(Exception):
    """Base class for all domain errors raised by the grid welfare toolkit."""

    def __init__(
        self,
        message: str,
        code: str = "DOMAIN_ERROR",
        exit_code: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        """
        Initialize domain error.

        Args:
            message: Human-readable error message
            code: Machine-readable error code
            exit_code: Process exit code used by the command-line front end
            details: Additional error details
        """
        super().__init__(message)
        self.message = message
        self.code = code
        self.exit_code = exit_code
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Convert error to dictionary for CLI reports."""
        result = {
            "success": False,
            "error": {
                "code": self.code,
                "message": self.message,
            },
        }

        if self.details:
            result["error"]["details"] = self.details

        return result
