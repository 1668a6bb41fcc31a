"""Domain errors for the simulation module."""

from typing import Any

from src.shared.domain.errors import DomainError


class SimulationError(DomainError):
    """Base class for simulation domain errors."""

    def __init__(
        self,
        message: str,
        code: str = "SIMULATION_ERROR",
        exit_code: int = 1,
        details: dict[str, Any] | None = None,
    ) -> None:
        super().__init__(message=message, code=code, exit_code=exit_code, details=details)


class ConfigParseError(SimulationError):
    """Raised when a scenario file is not well-formed."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None, column: int | None = None) -> None:
        details: dict[str, Any] = {}
        if path:
            details["path"] = path
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        super().__init__(message=message, code="CONFIG_PARSE_ERROR", exit_code=1, details=details)


class ConfigValidationError(SimulationError):
    """Raised when a scenario config violates an invariant; names every failing field."""

    def __init__(self, message: str, errors: list[dict[str, str]] | None = None) -> None:
        """
        Args:
            message: Summary of the failure
            errors: One {"field": dotted.path, "reason": text} entry per violation
        """
        self.errors = errors or []
        super().__init__(
            message=message,
            code="CONFIG_VALIDATION_ERROR",
            exit_code=1,
            details={"errors": self.errors} if self.errors else None,
        )


class DivergenceError(SimulationError):
    """Raised when the closed-loop state norm exceeds the divergence threshold."""

    def __init__(self, time: float, norm: float, threshold: float, trace: Any = None) -> None:
        """
        Args:
            time: Simulated time of detection
            norm: State max-norm at detection
            threshold: Configured divergence threshold
            trace: The SimTrace recorded up to detection
        """
        self.trace = trace
        super().__init__(
            message=f"Closed loop diverged at t={time:.6g}: |z| = {norm:.6g} > {threshold:.6g}",
            code="DIVERGENCE",
            exit_code=2,
            details={"time": time, "norm": norm, "threshold": threshold},
        )


class NumericInstabilityError(SimulationError):
    """Raised when the state becomes non-finite or a step cannot be solved."""

    def __init__(self, reason: str, time: float | None = None, trace: Any = None) -> None:
        self.trace = trace
        details: dict[str, Any] = {"reason": reason}
        if time is not None:
            details["time"] = time
        super().__init__(
            message=f"Numeric instability: {reason}",
            code="NUMERIC_INSTABILITY",
            exit_code=2,
            details=details,
        )


class ExportError(SimulationError):
    """Raised when results cannot be written."""

    def __init__(self, message: str, path: str) -> None:
        super().__init__(message=message, code="EXPORT_ERROR", exit_code=1, details={"path": path})


class OracleFailureError(SimulationError):
    """Raised when at least one oracle check fails."""

    def __init__(self, failures: list[dict[str, Any]]) -> None:
        self.failures = failures
        super().__init__(
            message=f"{len(failures)} oracle check(s) failed",
            code="ORACLE_FAILURE",
            exit_code=3,
            details={"failures": failures},
        )
