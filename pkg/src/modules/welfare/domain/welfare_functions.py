"""Quadratic cost, utility and the full welfare objective."""

from dataclasses import dataclass
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.modules.welfare.domain.errors import WelfareParameterError
from src.modules.welfare.domain.weights import WelfareWeights


def _vector(values: np.ndarray | list[float], name: str, size: int | None = None) -> np.ndarray:
    vector = np.atleast_1d(np.asarray(values, dtype=float))
    if vector.ndim != 1 or (size is not None and vector.size != size):
        raise WelfareParameterError(
            f"{name} must be a vector of length {size}, got shape {vector.shape}",
            field=name,
        )
    return vector


def cost(I_s: np.ndarray, pi_c: np.ndarray) -> float:
    """
    Generation cost C(I_s) = sum_i I_s,i^2 / (2 pi_c,i).

    Raises:
        WelfareParameterError: If any pi_c is not strictly positive
    """
    pi_c = _vector(pi_c, "pi_c")
    I_s = _vector(I_s, "I_s", pi_c.size)
    if np.any(pi_c <= 0.0):
        raise WelfareParameterError("pi_c must be strictly positive", field="pi_c")
    return float(np.sum(I_s**2 / (2.0 * pi_c)))


def utility(u_l: np.ndarray, I_l: np.ndarray, pi_u: np.ndarray) -> float:
    """
    Consumption utility U(u_l) = -sum_i I_l,i^2 (1 - u_l,i)^2 / (2 pi_u,i).

    A zero pi_u describes a rigid load and is only admissible where u_l = 1.

    Raises:
        WelfareParameterError: If pi_u is negative, or zero where u_l != 1
    """
    pi_u = _vector(pi_u, "pi_u")
    u_l = _vector(u_l, "u_l", pi_u.size)
    I_l = _vector(I_l, "I_l", pi_u.size)
    if np.any(pi_u < 0.0):
        raise WelfareParameterError("pi_u must be non-negative", field="pi_u")

    shortfall = I_l * (1.0 - u_l)
    rigid = pi_u == 0.0
    if np.any(rigid & (shortfall != 0.0)):
        raise WelfareParameterError("pi_u = 0 requires u_l = 1 for that prosumer", field="pi_u")

    flexible = ~rigid
    return float(-np.sum(shortfall[flexible] ** 2 / (2.0 * pi_u[flexible])))


def welfare(u_l: np.ndarray, I_s: np.ndarray, I_l: np.ndarray, pi_c: np.ndarray, pi_u: np.ndarray) -> float:
    """Psycho-social-physical welfare W = U - C."""
    return utility(u_l, I_l, pi_u) - cost(I_s, pi_c)


@dataclass(frozen=True)
class DecisionPoint:
    """Decision variables of the welfare problem: inputs u_s, u_l and states I_s, V."""

    u_s: np.ndarray
    u_l: np.ndarray
    I_s: np.ndarray
    V: np.ndarray

    @classmethod
    def from_vector(cls, vector: np.ndarray, n: int) -> Self:
        """Split a stacked [u_s, u_l, I_s, V] vector."""
        vector = _vector(vector, "decision vector", 4 * n)
        return cls(
            u_s=vector[:n].copy(),
            u_l=vector[n:2 * n].copy(),
            I_s=vector[2 * n:3 * n].copy(),
            V=vector[3 * n:].copy(),
        )

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.u_s, self.u_l, self.I_s, self.V])


def objective_value(
    point: DecisionPoint,
    V_d: np.ndarray,
    weights: WelfareWeights,
    I_l: np.ndarray,
    pi_c: np.ndarray,
    pi_u: np.ndarray,
) -> float:
    """
    Objective -alpha W(u_l, I_s) + beta/2 |u_s|^2 + gamma/2 |V - V_d|^2.

    Raises:
        WelfareParameterError: As for cost and utility
    """
    V_d = _vector(V_d, "V_d", point.V.size)
    return (
        -weights.alpha * welfare(point.u_l, point.I_s, I_l, pi_c, pi_u)
        + 0.5 * weights.beta * float(np.dot(point.u_s, point.u_s))
        + 0.5 * weights.gamma * float(np.sum((point.V - V_d) ** 2))
    )
