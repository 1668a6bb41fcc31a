"""Design weights of the welfare objective."""

import math
from dataclasses import dataclass

from src.modules.welfare.domain.errors import WelfareParameterError


@dataclass(frozen=True)
class WelfareWeights:
    """
    Weights alpha (welfare), beta (control effort) and gamma (voltage deviation).

    All three must be strictly positive for the objective to be strictly convex.
    """

    alpha: float = 1e6
    beta: float = 1e-6
    gamma: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise WelfareParameterError(f"{name} must be strictly positive, got {value}", field=name)

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}
