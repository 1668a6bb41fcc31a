"""Closed loop of plant and controller as one affine vector field."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from src.modules.controller.domain.dynamics import (
    comfort_gain,
    controller_derivative,
    controller_storage,
    frozen_components,
    interconnect,
    project_box,
    rigid_loads,
)
from src.modules.controller.domain.state import ConstraintSettings, ControllerGains, ControllerState
from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.plant import grid_derivative, storage_value
from src.modules.grid.domain.state import GridState
from src.modules.grid.domain.topology import GridTopology
from src.modules.simulation.domain.errors import NumericInstabilityError


@dataclass(frozen=True)
class StateLayout:
    """
    Index layout of the stacked closed-loop vector

        z = [I_s, I, V, u_s*, u_l*, I_s*, V*, lambda_a, lambda_b, eta_lo, eta_up]
    """

    n: int
    m: int

    @property
    def size(self) -> int:
        return 2 * self.n + self.m + ControllerState.BLOCKS * self.n

    @property
    def grid_size(self) -> int:
        return 2 * self.n + self.m

    def block(self, name: str) -> slice:
        n, m = self.n, self.m
        starts = {"I_s": 0, "I": n, "V": n + m}
        if name in starts:
            length = m if name == "I" else n
            return slice(starts[name], starts[name] + length)
        order = ("u_s", "u_l", "I_s_star", "V_star", "lambda_a", "lambda_b", "eta_lower", "eta_upper")
        k = order.index(name)
        start = self.grid_size + k * n
        return slice(start, start + n)


@dataclass(frozen=True)
class ActiveSet:
    """
    Components held fixed by the constraints.

    load_lower / load_upper: u_l* pinned at u_l_min / 1;
    eta_lower / eta_upper: band multipliers frozen at zero;
    clamped: load controls outside [0, 1] that the plant clamps.
    """

    load_lower: np.ndarray
    load_upper: np.ndarray
    eta_lower: np.ndarray
    eta_upper: np.ndarray
    clamped: np.ndarray | None = None

    def key(self) -> bytes:
        clamped = self.clamped if self.clamped is not None else np.zeros_like(self.load_lower)
        return np.concatenate([
            self.load_lower, self.load_upper, self.eta_lower, self.eta_upper, clamped,
        ]).tobytes()

    def count(self) -> int:
        return int(self.load_lower.sum() + self.load_upper.sum() + (~self.eta_lower).sum() + (~self.eta_upper).sum())

    def to_dict(self) -> dict:
        return {
            "load_lower": np.flatnonzero(self.load_lower).tolist(),
            "load_upper": np.flatnonzero(self.load_upper).tolist(),
            "band_lower": np.flatnonzero(~self.eta_lower).tolist(),
            "band_upper": np.flatnonzero(~self.eta_upper).tolist(),
        }


class ClosedLoopSystem:
    """
    Plant and controller interconnected by u = u*, nu_s = -I_s, nu_l = I_l V.

    rate() evaluates the projected vector field from the plant and controller
    functions; matrix() and offset() give its affine form z_dot = A z + b,
    which is exact away from the load clamp.
    """

    def __init__(
        self,
        params: GridParameters,
        topology: GridTopology,
        gains: ControllerGains,
        constraints: ConstraintSettings,
    ) -> None:
        params.check_matches(topology.n, topology.m)
        self.params = params
        self.topology = topology
        self.gains = gains
        self.constraints = constraints
        self.layout = StateLayout(topology.n, topology.m)
        self._mass = np.concatenate([params.L_s, params.L, params.C, gains.tau_vector(topology.n)])
        self._A, self._b = self._affine_form()

    # ==================== Packing ====================

    def pack(self, gstate: GridState, cstate: ControllerState) -> np.ndarray:
        return np.concatenate([gstate.as_vector(), cstate.as_vector()])

    def unpack(self, z: np.ndarray) -> tuple[GridState, ControllerState]:
        g = self.layout.grid_size
        return (
            GridState.from_vector(z[:g], self.layout.n, self.layout.m),
            ControllerState.from_vector(z[g:], self.layout.n),
        )

    @property
    def mass(self) -> np.ndarray:
        """Diagonal of diag(L_s, L, C, tau) weighting the storage functions."""
        return self._mass

    # ==================== Vector field ====================

    def split_rate(self, z: np.ndarray) -> tuple[GridState, ControllerState, ControllerState]:
        """Plant rate, unprojected controller rate and projected controller rate at z."""
        gstate, cstate = self.unpack(z)
        grid_input, ports = interconnect(gstate, cstate, self.params)
        plant_rate = grid_derivative(gstate, grid_input, self.params, self.topology)
        raw = controller_derivative(cstate, ports, self.gains, self.params, self.topology, self.constraints)
        return plant_rate, raw, project_box(raw, cstate, self.params, self.constraints)

    def rate(self, z: np.ndarray) -> np.ndarray:
        plant_rate, _, projected = self.split_rate(z)
        return np.concatenate([plant_rate.as_vector(), projected.as_vector()])

    def active_set(self, z: np.ndarray) -> ActiveSet:
        _, cstate = self.unpack(z)
        _, raw, _ = self.split_rate(z)
        load, eta_lower, eta_upper = frozen_components(raw, cstate, self.params, self.constraints)
        at_lower = load & (cstate.u_l_star <= self.params.u_l_min)
        return ActiveSet(
            load_lower=at_lower,
            load_upper=load & ~at_lower,
            eta_lower=eta_lower,
            eta_upper=eta_upper,
            clamped=(cstate.u_l_star < 0.0) | (cstate.u_l_star > 1.0),
        )

    def storages(self, z: np.ndarray) -> tuple[float, float]:
        """Plant storage S and controller storage S_c at z."""
        plant_rate, _, projected = self.split_rate(z)
        return storage_value(plant_rate, self.params), controller_storage(projected, self.gains)

    # ==================== Affine form ====================

    def _affine_form(self) -> tuple[np.ndarray, np.ndarray]:
        p, g, w = self.params, self.gains, self.gains.weights
        lay = self.layout
        n = lay.n
        size = lay.size
        incidence = self.topology.incidence_matrix()
        laplacian = self.topology.weighted_laplacian(p.R)
        comfort = comfort_gain(p, w.alpha)
        rigid = rigid_loads(p)
        eye = np.eye(n)

        A = np.zeros((size, size))
        b = np.zeros(size)
        Is, I, V = lay.block("I_s"), lay.block("I"), lay.block("V")
        us, ul, Iss, Vs = lay.block("u_s"), lay.block("u_l"), lay.block("I_s_star"), lay.block("V_star")
        la, lb, elo, eup = lay.block("lambda_a"), lay.block("lambda_b"), lay.block("eta_lower"), lay.block("eta_upper")

        # plant
        A[Is, Is] = np.diag(-p.R_s / p.L_s)
        A[Is, V] = np.diag(-1.0 / p.L_s)
        A[Is, us] = np.diag(1.0 / p.L_s)
        if lay.m:
            A[I, I] = np.diag(-p.R / p.L)
            A[I, V] = -incidence.T / p.L[:, None]
            A[V, I] = incidence / p.C[:, None]
        A[V, Is] = np.diag(1.0 / p.C)
        A[V, ul] = np.diag(-p.I_l / p.C)

        # controller with nu_s = -I_s, nu_l = I_l V
        A[us, us] = -w.beta / g.tau_s * eye
        A[us, la] = -eye / g.tau_s
        A[us, Is] = -eye / g.tau_s

        flexible = (~rigid).astype(float)
        A[ul, ul] = np.diag(np.where(rigid, -1.0, -comfort) / g.tau_l)
        A[ul, lb] = np.diag(flexible * p.I_l / g.tau_l)
        A[ul, V] = np.diag(flexible * p.I_l / g.tau_l)
        b[ul] = np.where(rigid, 1.0, comfort) / g.tau_l

        A[Iss, Iss] = np.diag(-w.alpha / p.pi_c / g.tau_I)
        A[Iss, la] = np.diag(p.R_s / g.tau_I)
        A[Iss, lb] = -eye / g.tau_I

        A[Vs, Vs] = -w.gamma / g.tau_V * eye
        A[Vs, la] = eye / g.tau_V
        A[Vs, lb] = laplacian / g.tau_V
        A[Vs, eup] = -eye / g.tau_V
        A[Vs, elo] = eye / g.tau_V
        b[Vs] = w.gamma * p.V_d / g.tau_V

        A[la, us] = eye / g.tau_a
        A[la, Iss] = np.diag(-p.R_s / g.tau_a)
        A[la, Vs] = -eye / g.tau_a

        A[lb, ul] = np.diag(-p.I_l / g.tau_b)
        A[lb, Iss] = eye / g.tau_b
        A[lb, Vs] = -laplacian / g.tau_b

        if self.constraints.voltage_band:
            A[elo, Vs] = -eye / g.tau_eta
            b[elo] = p.V_min / g.tau_eta
            A[eup, Vs] = eye / g.tau_eta
            b[eup] = -p.V_max / g.tau_eta

        A.setflags(write=False)
        b.setflags(write=False)
        return A, b

    def matrix(self, active: ActiveSet | None = None) -> np.ndarray:
        """Jacobian of the projected field; rows of frozen components are zero."""
        if active is None:
            return self._A
        A = self._A.copy()
        lay = self.layout
        ul = np.arange(lay.block("u_l").start, lay.block("u_l").stop)
        A[ul[active.load_lower | active.load_upper], :] = 0.0
        A[np.arange(lay.block("eta_lower").start, lay.block("eta_lower").stop)[active.eta_lower], :] = 0.0
        A[np.arange(lay.block("eta_upper").start, lay.block("eta_upper").stop)[active.eta_upper], :] = 0.0
        if active.clamped is not None and active.clamped.any():
            V = np.arange(lay.block("V").start, lay.block("V").stop)
            A[V[active.clamped], ul[active.clamped]] = 0.0
        return A

    def offset(self) -> np.ndarray:
        return self._b

    def rate_scale(self, z: np.ndarray) -> np.ndarray:
        """Sum of magnitudes of the terms of each rate component, |A| |z| + |b|."""
        return np.abs(self._A) @ np.abs(z) + np.abs(self._b)


def closed_loop_equilibrium(system: ClosedLoopSystem, active: ActiveSet | None = None) -> np.ndarray:
    """
    Exact equilibrium of the closed loop for a given constraint activity.

    Without an active set the unconstrained equilibrium is returned (eta = 0,
    no load bound). Pinned load controls sit on their bound, inactive band
    multipliers are zero, and an active band multiplier pins V* to that bound.

    Raises:
        NumericInstabilityError: If the equilibrium system is singular
    """
    lay = system.layout
    n = lay.n
    params = system.params
    active = active or ActiveSet(
        load_lower=np.zeros(n, dtype=bool),
        load_upper=np.zeros(n, dtype=bool),
        eta_lower=np.ones(n, dtype=bool),
        eta_upper=np.ones(n, dtype=bool),
        clamped=np.zeros(n, dtype=bool),
    )

    A = system.matrix().copy()
    b = -system.offset().copy()
    if not system.constraints.voltage_band:
        active = ActiveSet(
            active.load_lower, active.load_upper, np.ones(n, dtype=bool), np.ones(n, dtype=bool), active.clamped
        )

    def pin(index: int, value: float) -> None:
        A[index, :] = 0.0
        A[index, index] = 1.0
        b[index] = value

    ul = lay.block("u_l").start
    elo = lay.block("eta_lower").start
    eup = lay.block("eta_upper").start
    for i in range(n):
        if active.load_lower[i]:
            pin(ul + i, params.u_l_min[i])
        elif active.load_upper[i]:
            pin(ul + i, 1.0)
        if active.eta_lower[i]:
            pin(elo + i, 0.0)
        if active.eta_upper[i]:
            pin(eup + i, 0.0)

    # row magnitudes span many decades; equilibrate before the LU solve
    row_scale = np.max(np.abs(A), axis=1)
    row_scale[row_scale == 0.0] = 1.0
    try:
        z = scipy.linalg.solve(A / row_scale[:, None], b / row_scale)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericInstabilityError(f"closed-loop equilibrium system is singular: {exc}") from exc
    if not np.all(np.isfinite(z)):
        raise NumericInstabilityError("closed-loop equilibrium is not finite")
    return z


def polish_equilibrium(system: ClosedLoopSystem, z: np.ndarray, tolerance: float = 1e-9) -> np.ndarray | None:
    """
    Replace a nearly converged state by the exact equilibrium of its active set.

    Returns None when the exact point is inconsistent with that active set
    (a free load control or a band voltage outside its bounds, a negative
    multiplier, or a pinned load whose gradient points into the box).
    """
    active = system.active_set(z)
    try:
        candidate = closed_loop_equilibrium(system, active)
    except NumericInstabilityError:
        return None

    lay = system.layout
    params = system.params
    u_l = candidate[lay.block("u_l")]
    V_star = candidate[lay.block("V_star")]
    eta_lower = candidate[lay.block("eta_lower")]
    eta_upper = candidate[lay.block("eta_upper")]
    slack = tolerance * np.maximum(np.abs(params.V_d), 1.0)

    pinned = active.load_lower | active.load_upper
    if system.constraints.load_box:
        free = ~pinned
        if np.any(u_l[free] < params.u_l_min[free] - tolerance) or np.any(u_l[free] > 1.0 + tolerance):
            return None
    if system.constraints.voltage_band:
        if np.any(eta_lower < -tolerance) or np.any(eta_upper < -tolerance):
            return None
        if np.any(V_star < params.V_min - slack) or np.any(V_star > params.V_max + slack):
            return None

    _, raw, _ = system.split_rate(candidate)
    if np.any(raw.u_l_star[active.load_lower] > 0.0) or np.any(raw.u_l_star[active.load_upper] < 0.0):
        return None

    candidate[lay.block("eta_lower")] = np.maximum(eta_lower, 0.0)
    candidate[lay.block("eta_upper")] = np.maximum(eta_upper, 0.0)
    return candidate
