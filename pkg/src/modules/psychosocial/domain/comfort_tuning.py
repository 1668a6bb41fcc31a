"""Comfort coefficients pi_u tuned to an acceptable flexibility level."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import truncnorm

from src.modules.psychosocial.domain.errors import FlexibilityParameterError

NON_ADOPTER_PI_U = 1e-6


@dataclass(frozen=True)
class PiUSpread:
    """
    Distribution of the relative comfort weights among adopters.

    A normal with the given mean and coefficient of variation, truncated to
    positive values. The default variation is the SEV scale's SD/M = 1.23/3.22.
    Only the spread across prosumers depends on it; the total is fixed by the
    flexibility level.
    """

    mean: float = 1.0
    cv: float = 1.23 / 3.22

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mean) and self.mean > 0.0):
            raise FlexibilityParameterError(f"Spread mean must be positive, got {self.mean}", field="spread.mean")
        if not (math.isfinite(self.cv) and self.cv >= 0.0):
            raise FlexibilityParameterError(f"Spread cv must be non-negative, got {self.cv}", field="spread.cv")

    def draw(self, size: int, rng: np.random.Generator) -> np.ndarray:
        if self.cv == 0.0:
            return np.full(size, self.mean)
        scale = self.mean * self.cv
        lower = (0.0 - self.mean) / scale
        return truncnorm.rvs(lower, np.inf, loc=self.mean, scale=scale, size=size, random_state=rng)


def comfort_budget(flexibility: float) -> float:
    """
    Total comfort 1^T Pi_u 1 that makes the ideal curtailment equal the flexibility level.

        1^T Pi_u 1 = 1 / (1 - Lambda) - 1

    Raises:
        FlexibilityParameterError: If Lambda is outside [0, 1)
    """
    if not math.isfinite(flexibility) or not (0.0 <= flexibility < 1.0):
        raise FlexibilityParameterError(
            f"Flexibility level must lie in [0, 1), got {flexibility}",
            field="lambda",
        )
    return 1.0 / (1.0 - flexibility) - 1.0


def tune_pi_u(
    flexibility: float,
    n: int,
    adopters: np.ndarray | None = None,
    spread: PiUSpread | None = None,
    seed: int | np.random.Generator | None = None,
    shares: np.ndarray | None = None,
) -> np.ndarray:
    """
    Comfort coefficients whose sum realizes a flexibility level.

    Non-adopters get NON_ADOPTER_PI_U. Adopters split the remaining budget in
    proportion to positive weights: drawn from the spread, or given explicitly
    via shares. A zero level leaves every entry at the non-adopter floor.

    Args:
        flexibility: Acceptable flexibility level Lambda in [0, 1)
        n: Number of prosumers
        adopters: Boolean mask of prosumers offering flexibility (default all)
        spread: Distribution of random weights (default PiUSpread())
        seed: Seed or generator; identical seeds give identical vectors
        shares: Explicit non-negative weights replacing the random draws

    Raises:
        FlexibilityParameterError: If Lambda >= 1, the mask is malformed, or
            no adopter can carry a positive budget
    """
    total = comfort_budget(flexibility)
    if n < 1:
        raise FlexibilityParameterError("At least one prosumer is required", field="n")

    adopters = np.ones(n, dtype=bool) if adopters is None else np.asarray(adopters, dtype=bool)
    if adopters.shape != (n,):
        raise FlexibilityParameterError(f"Adopter mask must have length {n}, got {adopters.shape}", field="adopters")

    pi_u = np.full(n, NON_ADOPTER_PI_U)
    if total == 0.0:
        return pi_u

    n_adopters = int(adopters.sum())
    if n_adopters == 0:
        raise FlexibilityParameterError("A positive flexibility level needs at least one adopter", field="adopters")

    budget = total - NON_ADOPTER_PI_U * (n - n_adopters)
    if budget <= 0.0:
        raise FlexibilityParameterError(
            f"Flexibility level {flexibility} is too small to cover {n - n_adopters} non-adopters",
            field="lambda",
        )

    if shares is not None:
        shares = np.asarray(shares, dtype=float)
        if shares.shape != (n,) or np.any(shares < 0.0) or not np.all(np.isfinite(shares)):
            raise FlexibilityParameterError("Shares must be n finite non-negative values", field="shares")
        weights = shares[adopters]
    else:
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        weights = (spread or PiUSpread()).draw(n_adopters, rng)

    weight_sum = float(weights.sum())
    if weight_sum <= 0.0:
        raise FlexibilityParameterError("Adopter weights must not all be zero", field="shares")

    pi_u[adopters] = budget * weights / weight_sum
    return pi_u
