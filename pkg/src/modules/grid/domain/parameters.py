"""Electrical and preference parameters of prosumers and lines."""

import math
from dataclasses import dataclass, replace
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.modules.grid.domain.errors import ParameterDomainError, StructuralError

PI_C_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ProsumerParams:
    """
    Constants of one prosumer (SI units).

    R_s, L_s: filter resistance and inductance; C: shunt capacitance;
    I_l: load current demand; pi_c, pi_u: cost and comfort coefficients;
    V_d: desired voltage with permitted band [V_min, V_max];
    u_l_min: minimum admissible load control.
    """

    R_s: float
    L_s: float
    C: float
    I_l: float
    pi_c: float
    pi_u: float
    V_d: float = 380.0
    V_min: float = 379.3
    V_max: float = 380.7
    u_l_min: float = 0.0

    def __post_init__(self) -> None:
        for name in ("R_s", "L_s", "C", "I_l", "pi_c"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ParameterDomainError(f"{name} must be strictly positive, got {value}", field=name)
        if not math.isfinite(self.pi_u) or self.pi_u < 0.0:
            raise ParameterDomainError(f"pi_u must be non-negative, got {self.pi_u}", field="pi_u")
        if not (self.V_min < self.V_d < self.V_max):
            raise ParameterDomainError(
                f"Voltage band must satisfy V_min < V_d < V_max, got "
                f"{self.V_min} < {self.V_d} < {self.V_max}",
                field="V_d",
            )
        if not (0.0 <= self.u_l_min < 1.0):
            raise ParameterDomainError(f"u_l_min must lie in [0, 1), got {self.u_l_min}", field="u_l_min")


@dataclass(frozen=True)
class LineParams:
    """Resistance R and inductance L of one transmission line (SI units)."""

    R: float
    L: float

    def __post_init__(self) -> None:
        for name in ("R", "L"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise ParameterDomainError(f"Line {name} must be strictly positive, got {value}", field=name)


class GridParameters:
    """
    Vectorized parameters of a whole grid.

    Holds one numpy array per quantity (length n for prosumers, m for lines).
    Arrays are read-only so that instances can be shared between runs.
    """

    PROSUMER_FIELDS = ("R_s", "L_s", "C", "I_l", "pi_c", "pi_u", "V_d", "V_min", "V_max", "u_l_min")
    LINE_FIELDS = ("R", "L")

    def __init__(self, prosumers: list[ProsumerParams], lines: list[LineParams]) -> None:
        """
        Stack per-prosumer and per-line records.

        Raises:
            ParameterDomainError: If the capacity coefficients do not sum to one
        """
        if not prosumers:
            raise ParameterDomainError("At least one prosumer is required", field="prosumers")

        self._prosumers = tuple(prosumers)
        self._lines = tuple(lines)
        self._arrays: dict[str, np.ndarray] = {}

        for name in self.PROSUMER_FIELDS:
            self._arrays[name] = self._frozen([getattr(p, name) for p in prosumers])
        for name in self.LINE_FIELDS:
            self._arrays[name] = self._frozen([getattr(line, name) for line in lines])

        pi_c_sum = float(self._arrays["pi_c"].sum())
        if abs(pi_c_sum - 1.0) > PI_C_SUM_TOLERANCE:
            raise ParameterDomainError(
                f"Capacity coefficients must sum to 1, got {pi_c_sum:.12g}",
                field="pi_c",
            )

    @staticmethod
    def _frozen(values: list[float]) -> np.ndarray:
        array = np.asarray(values, dtype=float)
        array.setflags(write=False)
        return array

    # ==================== Properties ====================

    @property
    def n(self) -> int:
        return len(self._prosumers)

    @property
    def m(self) -> int:
        return len(self._lines)

    @property
    def prosumers(self) -> tuple[ProsumerParams, ...]:
        return self._prosumers

    @property
    def lines(self) -> tuple[LineParams, ...]:
        return self._lines

    @property
    def R_s(self) -> np.ndarray:
        """Filter resistances (ohm)."""
        return self._arrays["R_s"]

    @property
    def L_s(self) -> np.ndarray:
        """Filter inductances (H)."""
        return self._arrays["L_s"]

    @property
    def C(self) -> np.ndarray:
        """Shunt capacitances (F)."""
        return self._arrays["C"]

    @property
    def I_l(self) -> np.ndarray:
        """Load current demands (A)."""
        return self._arrays["I_l"]

    @property
    def pi_c(self) -> np.ndarray:
        """Capacity coefficients, summing to one."""
        return self._arrays["pi_c"]

    @property
    def pi_u(self) -> np.ndarray:
        """Comfort (flexibility) coefficients."""
        return self._arrays["pi_u"]

    @property
    def V_d(self) -> np.ndarray:
        """Desired voltages (V)."""
        return self._arrays["V_d"]

    @property
    def V_min(self) -> np.ndarray:
        return self._arrays["V_min"]

    @property
    def V_max(self) -> np.ndarray:
        return self._arrays["V_max"]

    @property
    def u_l_min(self) -> np.ndarray:
        return self._arrays["u_l_min"]

    @property
    def R(self) -> np.ndarray:
        """Line resistances (ohm)."""
        return self._arrays["R"]

    @property
    def L(self) -> np.ndarray:
        """Line inductances (H)."""
        return self._arrays["L"]

    # ==================== Behavior ====================

    def check_matches(self, n: int, m: int) -> None:
        """
        Ensure the parameter set fits a topology.

        Raises:
            StructuralError: If the prosumer or line counts differ
        """
        if (self.n, self.m) != (n, m):
            raise StructuralError("grid parameters (n, m)", (n, m), (self.n, self.m))

    def with_pi_u(self, pi_u: np.ndarray) -> Self:
        """Copy with new comfort coefficients."""
        pi_u = np.asarray(pi_u, dtype=float)
        if pi_u.shape != (self.n,):
            raise StructuralError("pi_u", (self.n,), pi_u.shape)
        prosumers = [replace(p, pi_u=float(v)) for p, v in zip(self._prosumers, pi_u)]
        return type(self)(prosumers, list(self._lines))

    def with_u_l_min(self, u_l_min: np.ndarray) -> Self:
        """Copy with new minimum load controls."""
        u_l_min = np.broadcast_to(np.asarray(u_l_min, dtype=float), (self.n,))
        prosumers = [replace(p, u_l_min=float(v)) for p, v in zip(self._prosumers, u_l_min)]
        return type(self)(prosumers, list(self._lines))

    def total_demand(self) -> float:
        """Total load demand 1^T I_l 1."""
        return float(self._arrays["I_l"].sum())

    def to_dict(self) -> dict:
        """Convert parameters to dictionary representation."""
        return {name: array.tolist() for name, array in self._arrays.items()}

    def __repr__(self) -> str:
        return f"GridParameters(n={self.n}, m={self.m})"
