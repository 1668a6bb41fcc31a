"""Closed-form solution of the ideal (unconstrained) welfare problem."""

from dataclasses import dataclass

import numpy as np

from src.modules.welfare.domain.errors import DegenerateProblemError, WelfareParameterError


@dataclass(frozen=True)
class IdealWelfareSolution:
    """
    Optimum of min C(I_s) - U(u_l) subject to 1^T I_s = 1^T I_l u_l.

    I_s_opt = Pi_c 1 lambda_opt and I_l u_l_opt = (I_l - lambda_opt Pi_u) 1.
    u_l_opt is the unconstrained benchmark and may leave [u_l_min, 1].
    """

    lambda_opt: float
    I_s_opt: np.ndarray
    u_l_opt: np.ndarray

    def consumption_reduction(self, I_l: np.ndarray) -> np.ndarray:
        """Per-prosumer curtailment I_l (1 - u_l_opt)."""
        return np.asarray(I_l, dtype=float) * (1.0 - self.u_l_opt)

    def sharing_ratios(self, pi_c: np.ndarray) -> np.ndarray:
        """I_s_opt,i / pi_c,i; identical for all i under ideal current sharing."""
        return self.I_s_opt / np.asarray(pi_c, dtype=float)

    def to_dict(self) -> dict:
        return {
            "lambda_opt": self.lambda_opt,
            "I_s_opt": self.I_s_opt.tolist(),
            "u_l_opt": self.u_l_opt.tolist(),
        }


def _coefficients(I_l, pi_c, pi_u) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    I_l = np.atleast_1d(np.asarray(I_l, dtype=float))
    pi_c = np.atleast_1d(np.asarray(pi_c, dtype=float))
    pi_u = np.atleast_1d(np.asarray(pi_u, dtype=float))
    if not (I_l.shape == pi_c.shape == pi_u.shape) or I_l.ndim != 1:
        raise WelfareParameterError(
            f"I_l, pi_c and pi_u must be vectors of equal length, got {I_l.shape}, {pi_c.shape}, {pi_u.shape}",
            field="I_l",
        )
    if np.any(pi_c < 0.0):
        raise WelfareParameterError("pi_c must be non-negative", field="pi_c")
    if np.any(pi_u < 0.0):
        raise WelfareParameterError("pi_u must be non-negative", field="pi_u")
    if np.any(I_l <= 0.0):
        raise WelfareParameterError("I_l must be strictly positive", field="I_l")
    return I_l, pi_c, pi_u


def ideal_welfare_optimum(I_l: np.ndarray, pi_c: np.ndarray, pi_u: np.ndarray) -> IdealWelfareSolution:
    """
    Solve the ideal welfare problem in closed form.

        lambda_opt = 1^T I_l 1 / 1^T (Pi_c + Pi_u) 1
        I_s_opt    = Pi_c 1 lambda_opt
        u_l_opt    = 1 - lambda_opt Pi_u I_l^-1 1

    Args:
        I_l: Load demands (A)
        pi_c: Capacity coefficients
        pi_u: Comfort coefficients (zero marks a rigid load)

    Raises:
        DegenerateProblemError: If sum(pi_c + pi_u) = 0
        WelfareParameterError: If the coefficient vectors are malformed
    """
    I_l, pi_c, pi_u = _coefficients(I_l, pi_c, pi_u)

    denominator = float(np.sum(pi_c) + np.sum(pi_u))
    if denominator <= 0.0:
        raise DegenerateProblemError("sum of pi_c and pi_u is zero")

    lambda_opt = float(np.sum(I_l)) / denominator
    return IdealWelfareSolution(
        lambda_opt=lambda_opt,
        I_s_opt=pi_c * lambda_opt,
        u_l_opt=1.0 - lambda_opt * pi_u / I_l,
    )


def predicted_reduction(I_l: np.ndarray, pi_u: np.ndarray) -> np.ndarray:
    """
    Curtailment predicted from demand and comfort alone (capacity coefficients sum to one).

        I_l (1 - u_l_opt) = 1^T I_l 1 / (1 + 1^T Pi_u 1) Pi_u 1
    """
    I_l = np.asarray(I_l, dtype=float)
    pi_u = np.asarray(pi_u, dtype=float)
    return float(np.sum(I_l)) / (1.0 + float(np.sum(pi_u))) * pi_u
