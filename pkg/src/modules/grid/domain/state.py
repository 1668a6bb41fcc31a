"""Physical state and input of the DC grid."""

from dataclasses import dataclass
try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import numpy as np

from src.modules.grid.domain.errors import StructuralError


def _as_vector(values: np.ndarray | list[float], name: str, size: int) -> np.ndarray:
    vector = np.asarray(values, dtype=float)
    if vector.shape != (size,):
        raise StructuralError(name, (size,), vector.shape)
    return vector


@dataclass(frozen=True)
class GridState:
    """
    Physical state x = [I_s, I, V].

    The same shape is used for rates (dI_s/dt, dI/dt, dV/dt).
    """

    I_s: np.ndarray
    I: np.ndarray
    V: np.ndarray

    @classmethod
    def zeros(cls, n: int, m: int) -> Self:
        return cls(I_s=np.zeros(n), I=np.zeros(m), V=np.zeros(n))

    @classmethod
    def from_vector(cls, vector: np.ndarray, n: int, m: int) -> Self:
        """Split a stacked [I_s, I, V] vector."""
        vector = _as_vector(vector, "grid state vector", 2 * n + m)
        return cls(I_s=vector[:n].copy(), I=vector[n:n + m].copy(), V=vector[n + m:].copy())

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.I_s, self.I, self.V])

    def check(self, n: int, m: int) -> None:
        """
        Raises:
            StructuralError: If any component has the wrong length
        """
        _as_vector(self.I_s, "I_s", n)
        _as_vector(self.I, "I", m)
        _as_vector(self.V, "V", n)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.as_vector())))


@dataclass(frozen=True)
class GridInput:
    """Plant input u = [u_s, u_l]: source voltages and load controls."""

    u_s: np.ndarray
    u_l: np.ndarray

    def check(self, n: int) -> None:
        """
        Raises:
            StructuralError: If any component has the wrong length
        """
        _as_vector(self.u_s, "u_s", n)
        _as_vector(self.u_l, "u_l", n)

    def applied_load(self) -> np.ndarray:
        """Load control as seen by the plant: physical loads stay within [0, 1]."""
        return np.clip(self.u_l, 0.0, 1.0)

    def as_vector(self) -> np.ndarray:
        return np.concatenate([self.u_s, self.u_l])
