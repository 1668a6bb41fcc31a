"""Acceptable flexibility estimated from psychological value scores."""

import math
from dataclasses import dataclass

import numpy as np

from src.modules.psychosocial.domain.appliance import ApplianceModel, ValueProfile, check_omega_sum
from src.modules.psychosocial.domain.errors import FlexibilityParameterError


@dataclass(frozen=True)
class FlexibilityEstimate:
    """
    Adoption likelihoods rho per appliance, technical ceiling psi and the
    acceptable flexibility level lambda_ = psi * sum(omega * rho) <= psi.
    """

    rho: np.ndarray
    psi: float
    lambda_: float

    def to_dict(self) -> dict:
        return {"rho": self.rho.tolist(), "psi": self.psi, "lambda": self.lambda_}


@dataclass(frozen=True)
class CommunityFlexibility:
    """Per-prosumer flexibility levels and their demand-weighted community mean."""

    per_prosumer: np.ndarray
    community: float

    def comfort_shares(self, I_l: np.ndarray) -> np.ndarray:
        """Relative comfort weights I_l,i * lambda_i used to split the comfort budget."""
        return np.asarray(I_l, dtype=float) * self.per_prosumer


def adoption_likelihood(model: ApplianceModel, profile: ValueProfile) -> float:
    """Likelihood mu + theta STV + epsilon SEV, clamped to [0, 1]."""
    raw = model.mu + model.theta * profile.stv + model.epsilon * profile.sev
    return min(1.0, max(0.0, raw))


def _check_psi(psi: float) -> None:
    if not math.isfinite(psi) or not (0.0 <= psi <= 1.0):
        raise FlexibilityParameterError(f"psi must lie in [0, 1], got {psi}", field="psi")


def flexibility_level(
    models: list[ApplianceModel] | tuple[ApplianceModel, ...],
    profile: ValueProfile,
    psi: float,
) -> FlexibilityEstimate:
    """
    Acceptable flexibility level of a community with one value profile.

    Args:
        models: Appliance models whose omega sum to one
        profile: Standardized value scores
        psi: Technical flexibility ceiling in [0, 1]

    Raises:
        FlexibilityParameterError: On a weight-sum violation or psi outside [0, 1]
    """
    check_omega_sum(models)
    _check_psi(psi)

    rho = np.array([adoption_likelihood(model, profile) for model in models])
    omega = np.array([model.omega for model in models])
    return FlexibilityEstimate(rho=rho, psi=psi, lambda_=psi * float(omega @ rho))


def community_flexibility(
    models: list[ApplianceModel] | tuple[ApplianceModel, ...],
    profiles: list[ValueProfile],
    I_l: np.ndarray,
    psi: float,
) -> CommunityFlexibility:
    """
    Flexibility of prosumers with individual value profiles.

    The community level is the demand-weighted mean of the individual levels,
    i.e. the share of total consumption that may be curtailed.
    """
    I_l = np.asarray(I_l, dtype=float)
    if len(profiles) != I_l.size:
        raise FlexibilityParameterError(
            f"Expected {I_l.size} value profiles, got {len(profiles)}",
            field="profiles",
        )
    levels = np.array([flexibility_level(models, profile, psi).lambda_ for profile in profiles])
    return CommunityFlexibility(
        per_prosumer=levels,
        community=float(I_l @ levels / I_l.sum()),
    )
