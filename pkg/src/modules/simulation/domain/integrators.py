"""Fixed-step integrators for the closed loop."""

from abc import ABC, abstractmethod

import numpy as np
import scipy.linalg

from src.modules.controller.domain.dynamics import clip_to_box
from src.modules.simulation.domain.closed_loop import ActiveSet, ClosedLoopSystem
from src.modules.simulation.domain.errors import NumericInstabilityError


class Integrator(ABC):
    """One fixed step z(t) -> z(t + h) of the projected closed loop."""

    def __init__(self, system: ClosedLoopSystem, step: float) -> None:
        self.system = system
        self.step_size = step

    @abstractmethod
    def step(self, z: np.ndarray) -> np.ndarray:
        pass

    def _clip(self, z: np.ndarray) -> np.ndarray:
        """Put controller components back into the load box and eta >= 0."""
        system = self.system
        g = system.layout.grid_size
        _, cstate = system.unpack(z)
        clipped = clip_to_box(cstate, system.params, system.constraints)
        return np.concatenate([z[:g], clipped.as_vector()])


class RungeKutta4(Integrator):
    """Classical explicit fourth-order scheme on the projected field, clipped after each step."""

    def step(self, z: np.ndarray) -> np.ndarray:
        h = self.step_size
        rate = self.system.rate
        k1 = rate(z)
        k2 = rate(z + 0.5 * h * k1)
        k3 = rate(z + 0.5 * h * k2)
        k4 = rate(z + h * k3)
        return self._clip(z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))


class ImplicitEuler(Integrator):
    """
    Linearly implicit Euler: z+ = z + h (I - h A_act)^-1 f(z).

    On the affine closed loop this is backward Euler. A_act is the Jacobian with
    the rows of frozen components removed; one LU factorization is cached per
    active set. Each solve is followed by one step of iterative refinement.
    """

    def __init__(self, system: ClosedLoopSystem, step: float) -> None:
        super().__init__(system, step)
        self._factorizations: dict[bytes, tuple[tuple[np.ndarray, np.ndarray], np.ndarray, np.ndarray]] = {}
        self.last_active: ActiveSet | None = None

    def _factor(self, active: ActiveSet) -> tuple[tuple[np.ndarray, np.ndarray], np.ndarray, np.ndarray]:
        key = active.key()
        cached = self._factorizations.get(key)
        if cached is None:
            matrix = np.eye(self.system.layout.size) - self.step_size * self.system.matrix(active)
            row_scale = np.max(np.abs(matrix), axis=1)
            scaled = matrix / row_scale[:, None]
            try:
                lu = scipy.linalg.lu_factor(scaled, check_finite=True)
            except (ValueError, np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
                raise NumericInstabilityError(f"step matrix cannot be factorized: {exc}") from exc
            cached = (lu, row_scale, matrix)
            self._factorizations[key] = cached
        return cached

    def step(self, z: np.ndarray) -> np.ndarray:
        active = self.system.active_set(z)
        self.last_active = active
        lu, row_scale, matrix = self._factor(active)

        f = self.system.rate(z)
        delta = scipy.linalg.lu_solve(lu, f / row_scale, check_finite=False)
        residual = f - matrix @ delta
        delta = delta + scipy.linalg.lu_solve(lu, residual / row_scale, check_finite=False)
        return self._clip(z + self.step_size * delta)

    @property
    def factorization_count(self) -> int:
        return len(self._factorizations)


INTEGRATORS: dict[str, type[Integrator]] = {
    "rk4": RungeKutta4,
    "implicit_euler": ImplicitEuler,
}


def make_integrator(method: str, system: ClosedLoopSystem, step: float) -> Integrator:
    """
    Raises:
        ValueError: If the method is unknown
    """
    try:
        return INTEGRATORS[method](system, step)
    except KeyError:
        raise ValueError(f"Unknown integration method '{method}'") from None
