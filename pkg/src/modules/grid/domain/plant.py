"""DC-grid plant: dynamics, steady state and passivity storage."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.integrate import cumulative_trapezoid

from src.modules.grid.domain.errors import SingularSystemError, StructuralError
from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.state import GridInput, GridState
from src.modules.grid.domain.topology import GridTopology


def _check_dimensions(
    params: GridParameters,
    topology: GridTopology,
    state: GridState | None = None,
    grid_input: GridInput | None = None,
) -> None:
    params.check_matches(topology.n, topology.m)
    if state is not None:
        state.check(topology.n, topology.m)
    if grid_input is not None:
        grid_input.check(topology.n)


def grid_derivative(
    state: GridState,
    grid_input: GridInput,
    params: GridParameters,
    topology: GridTopology,
) -> GridState:
    """
    Right-hand side of the plant dynamics.

        L_s dI_s/dt = -R_s I_s - V + u_s
        L   dI/dt   = -R I - B^T V
        C   dV/dt   = I_s + B I - I_l u_l

    The load control is clamped to [0, 1] before it reaches the load.

    Raises:
        StructuralError: If dimensions are inconsistent
    """
    _check_dimensions(params, topology, state, grid_input)
    incidence = topology.incidence_matrix()
    u_l = grid_input.applied_load()

    d_I_s = (-params.R_s * state.I_s - state.V + grid_input.u_s) / params.L_s
    d_I = (-params.R * state.I - incidence.T @ state.V) / params.L
    d_V = (state.I_s + incidence @ state.I - params.I_l * u_l) / params.C

    return GridState(I_s=d_I_s, I=d_I, V=d_V)


def steady_state(
    grid_input: GridInput,
    params: GridParameters,
    topology: GridTopology,
) -> GridState:
    """
    Unique forced equilibrium for a constant input.

        V = (I + R_s L)^-1 (u_s - R_s I_l u_l)
        I_s = L V + I_l u_l
        I = -R^-1 B^T V

    Raises:
        SingularSystemError: If the linear system cannot be solved
    """
    _check_dimensions(params, topology, grid_input=grid_input)
    laplacian = topology.weighted_laplacian(params.R) if topology.m else np.zeros((topology.n, topology.n))
    load = params.I_l * grid_input.applied_load()

    system = np.eye(topology.n) + params.R_s[:, None] * laplacian
    rhs = grid_input.u_s - params.R_s * load
    try:
        V = scipy.linalg.solve(system, rhs)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise SingularSystemError(str(exc)) from exc
    if not np.all(np.isfinite(V)):
        raise SingularSystemError("non-finite voltage solution")

    I_s = laplacian @ V + load
    I = -(topology.incidence_matrix().T @ V) / params.R

    return GridState(I_s=I_s, I=I, V=V)


def steady_state_residual(
    state: GridState,
    grid_input: GridInput,
    params: GridParameters,
    topology: GridTopology,
) -> tuple[float, float]:
    """
    Residual of the steady-state equations.

        0 = u_s - R_s I_s - V
        0 = -R^-1 B^T V - I
        0 = -B I + I_l u_l - I_s

    Returns:
        (absolute max-norm, componentwise relative max-norm), the latter scaling each
        equation by the sum of magnitudes of its terms
    """
    _check_dimensions(params, topology, state, grid_input)
    incidence = topology.incidence_matrix()
    load = params.I_l * grid_input.applied_load()

    source = grid_input.u_s - params.R_s * state.I_s - state.V
    source_scale = np.abs(grid_input.u_s) + np.abs(params.R_s * state.I_s) + np.abs(state.V)

    line = -(incidence.T @ state.V) / params.R - state.I
    line_scale = (np.abs(incidence.T) @ np.abs(state.V)) / params.R + np.abs(state.I)

    balance = -incidence @ state.I + load - state.I_s
    balance_scale = np.abs(incidence) @ np.abs(state.I) + np.abs(load) + np.abs(state.I_s)

    residual = np.concatenate([source, line, balance])
    scale = np.concatenate([source_scale, line_scale, balance_scale])
    absolute = float(np.max(np.abs(residual))) if residual.size else 0.0
    relative = float(np.max(np.abs(residual) / np.maximum(scale, np.finfo(float).tiny))) if residual.size else 0.0
    return absolute, relative


def storage_value(rate: GridState, params: GridParameters) -> float:
    """
    Plant storage S = 1/2 xdot^T diag(L_s, L, C) xdot.
    """
    if rate.I_s.shape != params.L_s.shape or rate.I.shape != params.L.shape or rate.V.shape != params.C.shape:
        raise StructuralError(
            "rate vector",
            (params.n, params.m, params.n),
            (rate.I_s.size, rate.I.size, rate.V.size),
        )
    return 0.5 * float(
        np.dot(params.L_s * rate.I_s, rate.I_s)
        + np.dot(params.L * rate.I, rate.I)
        + np.dot(params.C * rate.V, rate.V)
    )


@dataclass(frozen=True)
class DissipationReport:
    """Outcome of the numerical passivity check of the plant."""

    supply_integral: float
    storage_delta: float
    margin: float
    worst_index: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "supply_integral": self.supply_integral,
            "storage_delta": self.storage_delta,
            "margin": self.margin,
            "worst_index": self.worst_index,
            "passed": self.passed,
        }


def dissipation_check(
    times: np.ndarray,
    storage: np.ndarray,
    d_I_s: np.ndarray,
    d_V: np.ndarray,
    d_u_s: np.ndarray,
    d_u_l: np.ndarray,
    I_l: np.ndarray,
    tolerance: float = 1e-6,
) -> DissipationReport:
    """
    Check S(t) - S(t0) <= integral of u_d^T y over every prefix of a trajectory.

    The supply rate is u_d^T y = du_s^T dI_s - du_l^T I_l dV. Samples are
    row-indexed by time; the integral uses the trapezoidal rule.

    Returns:
        A report whose margin is the smallest (supply - storage increase) over all
        prefixes; passed is margin >= -tolerance. Never raises on violation.
    """
    times = np.asarray(times, dtype=float)
    storage = np.asarray(storage, dtype=float)
    if times.size < 2:
        return DissipationReport(0.0, 0.0, 0.0, 0, True)

    supply_rate = np.einsum("ij,ij->i", d_u_s, d_I_s) - np.einsum("ij,ij->i", d_u_l * I_l, d_V)
    supply = cumulative_trapezoid(supply_rate, times, initial=0.0)
    storage_increase = storage - storage[0]
    margins = supply - storage_increase
    worst = int(np.argmin(margins))
    margin = float(margins[worst])

    return DissipationReport(
        supply_integral=float(supply[-1]),
        storage_delta=float(storage_increase[-1]),
        margin=margin,
        worst_index=worst,
        passed=margin >= -tolerance,
    )
