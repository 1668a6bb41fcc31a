"""Primal-dual controller dynamics, box projection and plant interconnection."""

import numpy as np

from src.modules.controller.domain.state import (
    ConstraintSettings,
    ControllerGains,
    ControllerPorts,
    ControllerState,
)
from src.modules.grid.domain.errors import StructuralError
from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.state import GridInput, GridState
from src.modules.grid.domain.topology import GridTopology


def rigid_loads(params: GridParameters) -> np.ndarray:
    """Mask of prosumers with pi_u = 0; their load control is held at 1."""
    return params.pi_u == 0.0


def comfort_gain(params: GridParameters, alpha: float) -> np.ndarray:
    """alpha I_l^2 / pi_u, zero for rigid loads."""
    gain = np.zeros(params.n)
    flexible = ~rigid_loads(params)
    gain[flexible] = alpha * params.I_l[flexible] ** 2 / params.pi_u[flexible]
    return gain


def controller_derivative(
    cstate: ControllerState,
    ports: ControllerPorts,
    gains: ControllerGains,
    params: GridParameters,
    topology: GridTopology,
    constraints: ConstraintSettings | None = None,
) -> ControllerState:
    """
    Unprojected primal-dual dynamics.

        tau_s   du_s*   = -(beta u_s* + lambda_a - nu_s)
        tau_l   du_l*   = -(-alpha I_l^2/pi_u (1 - u_l*) - I_l lambda_b - nu_l)
        tau_I   dI_s*   = -(alpha/pi_c I_s* - R_s lambda_a + lambda_b)
        tau_V   dV*     = -(gamma (V* - V_d) - lambda_a - L lambda_b + eta_up - eta_lo)
        tau_a   dlam_a  = u_s* - R_s I_s* - V*
        tau_b   dlam_b  = -I_l u_l* + I_s* - L V*
        tau_eta deta_lo = V_min - V*,  tau_eta deta_up = V* - V_max

    L is the weighted Laplacian, so every rate of node i uses only node i and
    its neighbors. Rigid loads (pi_u = 0) relax u_l* towards 1 instead.
    Without a voltage band the eta rates are zero.

    Raises:
        StructuralError: If dimensions are inconsistent
    """
    constraints = constraints or ConstraintSettings()
    n = topology.n
    params.check_matches(n, topology.m)
    cstate.check(n)
    if ports.nu_s.shape != (n,) or ports.nu_l.shape != (n,):
        raise StructuralError("controller ports", (n, n), (ports.nu_s.size, ports.nu_l.size))

    weights = gains.weights
    laplacian = topology.weighted_laplacian(params.R)
    rigid = rigid_loads(params)

    d_u_s = -(weights.beta * cstate.u_s_star + cstate.lambda_a - ports.nu_s) / gains.tau_s

    load_gradient = (
        -comfort_gain(params, weights.alpha) * (1.0 - cstate.u_l_star)
        - params.I_l * cstate.lambda_b
        - ports.nu_l
    )
    d_u_l = np.where(rigid, -(cstate.u_l_star - 1.0), -load_gradient) / gains.tau_l

    d_I_s = -(
        weights.alpha / params.pi_c * cstate.I_s_star
        - params.R_s * cstate.lambda_a
        + cstate.lambda_b
    ) / gains.tau_I

    d_V = -(
        weights.gamma * (cstate.V_star - params.V_d)
        - cstate.lambda_a
        - laplacian @ cstate.lambda_b
        + cstate.eta_upper
        - cstate.eta_lower
    ) / gains.tau_V

    d_lambda_a = (cstate.u_s_star - params.R_s * cstate.I_s_star - cstate.V_star) / gains.tau_a
    d_lambda_b = (-params.I_l * cstate.u_l_star + cstate.I_s_star - laplacian @ cstate.V_star) / gains.tau_b

    if constraints.voltage_band:
        d_eta_lower = (params.V_min - cstate.V_star) / gains.tau_eta
        d_eta_upper = (cstate.V_star - params.V_max) / gains.tau_eta
    else:
        d_eta_lower = np.zeros(n)
        d_eta_upper = np.zeros(n)

    return ControllerState(
        u_s_star=d_u_s,
        u_l_star=d_u_l,
        I_s_star=d_I_s,
        V_star=d_V,
        lambda_a=d_lambda_a,
        lambda_b=d_lambda_b,
        eta_lower=d_eta_lower,
        eta_upper=d_eta_upper,
    )


def frozen_components(
    rate: ControllerState,
    cstate: ControllerState,
    params: GridParameters,
    constraints: ConstraintSettings,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Masks of components whose rate the projection zeroes.

    Returns:
        (u_l* at a bound pointing outward, eta_lower at zero decreasing, eta_upper at zero decreasing)
    """
    if constraints.load_box:
        at_lower = (cstate.u_l_star <= params.u_l_min) & (rate.u_l_star < 0.0)
        at_upper = (cstate.u_l_star >= 1.0) & (rate.u_l_star > 0.0)
        load = at_lower | at_upper
    else:
        load = np.zeros(params.n, dtype=bool)

    if constraints.voltage_band:
        eta_lower = (cstate.eta_lower <= 0.0) & (rate.eta_lower < 0.0)
        eta_upper = (cstate.eta_upper <= 0.0) & (rate.eta_upper < 0.0)
    else:
        eta_lower = np.ones(params.n, dtype=bool)
        eta_upper = np.ones(params.n, dtype=bool)

    return load, eta_lower, eta_upper


def project_box(
    rate: ControllerState,
    cstate: ControllerState,
    params: GridParameters,
    constraints: ConstraintSettings,
) -> ControllerState:
    """
    Project controller rates onto the tangent cone of the constraint set.

    A u_l* rate is zeroed at u_l_min when negative and at 1 when positive; an
    eta rate is zeroed at 0 when negative. A zero rate at a bound counts as
    interior. Other components pass through unchanged.
    """
    load, eta_lower, eta_upper = frozen_components(rate, cstate, params, constraints)
    if not (load.any() or eta_lower.any() or eta_upper.any()):
        return rate
    return ControllerState(
        u_s_star=rate.u_s_star,
        u_l_star=np.where(load, 0.0, rate.u_l_star),
        I_s_star=rate.I_s_star,
        V_star=rate.V_star,
        lambda_a=rate.lambda_a,
        lambda_b=rate.lambda_b,
        eta_lower=np.where(eta_lower, 0.0, rate.eta_lower),
        eta_upper=np.where(eta_upper, 0.0, rate.eta_upper),
    )


def clip_to_box(
    cstate: ControllerState,
    params: GridParameters,
    constraints: ConstraintSettings,
) -> ControllerState:
    """Return the nearest state inside the load box with non-negative eta."""
    u_l = np.clip(cstate.u_l_star, params.u_l_min, 1.0) if constraints.load_box else cstate.u_l_star
    return ControllerState(
        u_s_star=cstate.u_s_star,
        u_l_star=u_l,
        I_s_star=cstate.I_s_star,
        V_star=cstate.V_star,
        lambda_a=cstate.lambda_a,
        lambda_b=cstate.lambda_b,
        eta_lower=np.maximum(cstate.eta_lower, 0.0),
        eta_upper=np.maximum(cstate.eta_upper, 0.0),
    )


def interconnect(
    gstate: GridState,
    cstate: ControllerState,
    params: GridParameters,
) -> tuple[GridInput, ControllerPorts]:
    """
    Power-preserving interconnection u = u*, nu_s = -I_s, nu_l = I_l V.

    The load control handed to the plant is clamped to [0, 1].
    """
    n = params.n
    cstate.check(n)
    if gstate.I_s.shape != (n,) or gstate.V.shape != (n,):
        raise StructuralError("grid state", (n, n), (gstate.I_s.size, gstate.V.size))

    grid_input = GridInput(u_s=cstate.u_s_star.copy(), u_l=np.clip(cstate.u_l_star, 0.0, 1.0))
    ports = ControllerPorts(nu_s=-gstate.I_s, nu_l=params.I_l * gstate.V)
    return grid_input, ports


def controller_storage(rate: ControllerState, gains: ControllerGains) -> float:
    """Controller storage S_c = 1/2 sum tau x_c_dot^2."""
    n = rate.u_s_star.size
    velocity = rate.as_vector()
    return 0.5 * float(np.dot(gains.tau_vector(n) * velocity, velocity))
