"""Controller state, ports, gains and constraint toggles."""

import math
from dataclasses import dataclass, field, fields
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.modules.controller.domain.errors import GainError
from src.modules.grid.domain.errors import StructuralError
from src.modules.grid.domain.parameters import GridParameters
from src.modules.welfare.domain.weights import WelfareWeights


@dataclass(frozen=True)
class ControllerState:
    """
    Optimization state of the controller.

    Inputs u_s_star, u_l_star; states I_s_star, V_star; equality multipliers
    lambda_a, lambda_b; voltage-band multipliers eta_lower, eta_upper (>= 0).
    The same shape is used for rates.
    """

    u_s_star: np.ndarray
    u_l_star: np.ndarray
    I_s_star: np.ndarray
    V_star: np.ndarray
    lambda_a: np.ndarray
    lambda_b: np.ndarray
    eta_lower: np.ndarray
    eta_upper: np.ndarray

    BLOCKS = 8

    @classmethod
    def zeros(cls, n: int) -> Self:
        return cls(*(np.zeros(n) for _ in range(cls.BLOCKS)))

    @classmethod
    def cold_start(cls, params: GridParameters) -> Self:
        """u_s* = V* = V_d, u_l* = 1, every current and multiplier zero."""
        n = params.n
        return cls(
            u_s_star=params.V_d.copy(),
            u_l_star=np.ones(n),
            I_s_star=np.zeros(n),
            V_star=params.V_d.copy(),
            lambda_a=np.zeros(n),
            lambda_b=np.zeros(n),
            eta_lower=np.zeros(n),
            eta_upper=np.zeros(n),
        )

    @classmethod
    def from_vector(cls, vector: np.ndarray, n: int) -> Self:
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (cls.BLOCKS * n,):
            raise StructuralError("controller state vector", (cls.BLOCKS * n,), vector.shape)
        return cls(*(vector[k * n:(k + 1) * n].copy() for k in range(cls.BLOCKS)))

    def as_vector(self) -> np.ndarray:
        return np.concatenate([getattr(self, f.name) for f in fields(self)])

    def check(self, n: int) -> None:
        """
        Raises:
            StructuralError: If any block has the wrong length
        """
        for f in fields(self):
            value = np.asarray(getattr(self, f.name))
            if value.shape != (n,):
                raise StructuralError(f.name, (n,), value.shape)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_vector())))


@dataclass(frozen=True)
class ControllerPorts:
    """Controller input ports nu_s and nu_l."""

    nu_s: np.ndarray
    nu_l: np.ndarray

    @classmethod
    def zeros(cls, n: int) -> Self:
        return cls(nu_s=np.zeros(n), nu_l=np.zeros(n))


@dataclass(frozen=True)
class ControllerGains:
    """Time constants of the primal-dual dynamics and the objective weights."""

    tau_s: float = 1.0
    tau_l: float = 1.0
    tau_I: float = 1.0
    tau_V: float = 1.0
    tau_a: float = 1.0
    tau_b: float = 1.0
    tau_eta: float = 1.0
    weights: WelfareWeights = field(default_factory=WelfareWeights)

    def __post_init__(self) -> None:
        for name in ("tau_s", "tau_l", "tau_I", "tau_V", "tau_a", "tau_b", "tau_eta"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise GainError(f"{name} must be strictly positive, got {value}", field=name)

    def block_taus(self) -> tuple[float, ...]:
        """Time constant of each ControllerState block, in field order."""
        return (self.tau_s, self.tau_l, self.tau_I, self.tau_V, self.tau_a, self.tau_b, self.tau_eta, self.tau_eta)

    def tau_vector(self, n: int) -> np.ndarray:
        return np.repeat(np.array(self.block_taus()), n)

    def to_dict(self) -> dict:
        return {
            "tau_s": self.tau_s,
            "tau_l": self.tau_l,
            "tau_I": self.tau_I,
            "tau_V": self.tau_V,
            "tau_a": self.tau_a,
            "tau_b": self.tau_b,
            "tau_eta": self.tau_eta,
            **self.weights.to_dict(),
        }


@dataclass(frozen=True)
class ConstraintSettings:
    """Toggles for the load box [u_l_min, 1] and the voltage band [V_min, V_max]."""

    load_box: bool = True
    voltage_band: bool = True

    @classmethod
    def unconstrained(cls) -> Self:
        return cls(load_box=False, voltage_band=False)
