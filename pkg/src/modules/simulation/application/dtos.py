"""Data Transfer Objects for the simulation application layer."""

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.modules.simulation.domain.scenario_setup import ScenarioSetup
from src.modules.simulation.domain.trace import RunCertificate, SimTrace


@dataclass(frozen=True)
class RunScenarioRequest:
    """Request DTO for running one scenario."""

    config: ScenarioConfig
    initial_seed: int | None = None


@dataclass(frozen=True)
class ScenarioRunResponse:
    """Response DTO of a finished run."""

    certificate: RunCertificate
    trace: SimTrace
    setup: ScenarioSetup
    final_state: np.ndarray


@dataclass(frozen=True)
class ValidateConfigRequest:
    """Request DTO for validating a scenario file."""

    path: Path
    overrides: list[str] = field(default_factory=list)
    seed: int | None = None


@dataclass(frozen=True)
class ExportTraceRequest:
    """Request DTO for exporting a run."""

    trace: SimTrace
    certificate: RunCertificate
    directory: Path
    plot: bool = False


@dataclass(frozen=True)
class OracleSuiteRequest:
    """Request DTO for the oracle suite."""

    instances: int = 50
    seed: int = 0


@dataclass(frozen=True)
class OracleCheck:
    """Outcome of one oracle comparison."""

    name: str
    seed: int | None
    passed: bool
    error: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "error": self.error,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class OracleReport:
    """Pass/fail table of the oracle suite."""

    checks: tuple[OracleCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[OracleCheck]:
        return [check for check in self.checks if not check.passed]

    def table_lines(self) -> list[str]:
        """One line per check group with its worst error."""
        groups: dict[str, list[OracleCheck]] = {}
        for check in self.checks:
            groups.setdefault(check.name, []).append(check)

        lines = [f"{'check':<28} {'runs':>5} {'worst error':>12} {'tolerance':>10}  result"]
        for name, checks in groups.items():
            worst = max(check.error for check in checks)
            ok = all(check.passed for check in checks)
            lines.append(
                f"{name:<28} {len(checks):>5} {worst:>12.3e} {checks[0].tolerance:>10.1e}  {'PASS' if ok else 'FAIL'}"
            )
        for check in self.failures:
            lines.append(f"  failed: {check.name} seed={check.seed} error={check.error:.3e} {check.detail}".rstrip())
        return lines
