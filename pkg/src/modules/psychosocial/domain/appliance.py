"""Appliance adoption models, value profiles and the appliance table."""

import math
from dataclasses import dataclass, field

import numpy as np

from src.modules.psychosocial.domain.errors import FlexibilityParameterError, SurveyDataError

OMEGA_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ApplianceModel:
    """
    Linear adoption model of one appliance class.

    rho = mu + theta * STV + epsilon * SEV, weighted by the consumption share omega.
    survey_mean is the survey 1-to-5 scale mean behind mu, when known.
    """

    name: str
    mu: float
    theta: float
    epsilon: float
    omega: float
    survey_mean: float | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise FlexibilityParameterError("Appliance name cannot be empty", field="name")
        for name in ("mu", "theta", "epsilon", "omega"):
            if not math.isfinite(getattr(self, name)):
                raise FlexibilityParameterError(f"{name} of '{self.name}' must be finite", field=name)
        if not (0.0 <= self.mu <= 1.0):
            raise FlexibilityParameterError(f"mu of '{self.name}' must lie in [0, 1], got {self.mu}", field="mu")
        if not (0.0 <= self.omega <= 1.0):
            raise FlexibilityParameterError(
                f"omega of '{self.name}' must lie in [0, 1], got {self.omega}",
                field="omega",
            )


@dataclass(frozen=True)
class ValueProfile:
    """Standardized self-transcendence (stv) and self-enhancement (sev) scores."""

    stv: float = 0.0
    sev: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.stv) and math.isfinite(self.sev)):
            raise FlexibilityParameterError("Value scores must be finite", field="profile")

    def to_dict(self) -> dict:
        return {"stv": self.stv, "sev": self.sev}


@dataclass(frozen=True)
class ScaleStatistics:
    """Mean and standard deviation of a survey scale."""

    mean: float
    sd: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean) or not math.isfinite(self.sd) or self.sd <= 0.0:
            raise SurveyDataError(f"Scale statistics need finite mean and sd > 0, got ({self.mean}, {self.sd})")


@dataclass(frozen=True)
class ApplianceTable:
    """Appliance models plus the value-scale statistics of the survey population."""

    models: tuple[ApplianceModel, ...]
    stv: ScaleStatistics = field(default_factory=lambda: ScaleStatistics(4.80, 1.36))
    sev: ScaleStatistics = field(default_factory=lambda: ScaleStatistics(3.22, 1.23))

    def __post_init__(self) -> None:
        if not self.models:
            raise FlexibilityParameterError("Appliance table cannot be empty", field="appliances")
        names = [model.name for model in self.models]
        if len(set(names)) != len(names):
            raise FlexibilityParameterError("Appliance names must be unique", field="appliances")
        check_omega_sum(self.models)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(model.name for model in self.models)

    def survey_means(self) -> dict[str, float]:
        """Survey 1-to-5 means of the appliances that carry one."""
        return {m.name: m.survey_mean for m in self.models if m.survey_mean is not None}

    def get(self, name: str) -> ApplianceModel:
        for model in self.models:
            if model.name == name:
                return model
        raise FlexibilityParameterError(f"Unknown appliance '{name}'", field="appliances")

    def to_dict(self) -> dict:
        return {
            "appliances": [
                {"name": m.name, "mu": m.mu, "theta": m.theta, "epsilon": m.epsilon, "omega": m.omega}
                for m in self.models
            ],
            "stv": {"mean": self.stv.mean, "sd": self.stv.sd},
            "sev": {"mean": self.sev.mean, "sd": self.sev.sd},
        }


def check_omega_sum(models: tuple[ApplianceModel, ...] | list[ApplianceModel]) -> None:
    """
    Raises:
        FlexibilityParameterError: If the consumption shares do not sum to one
    """
    total = float(np.sum([model.omega for model in models]))
    if abs(total - 1.0) > OMEGA_SUM_TOLERANCE:
        raise FlexibilityParameterError(f"Appliance weights must sum to 1, got {total:.12g}", field="omega")
