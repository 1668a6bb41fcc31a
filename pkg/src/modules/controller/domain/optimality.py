"""Optimality certificates: KKT residual and the filter-loss identity."""

from dataclasses import dataclass

import numpy as np

from src.modules.controller.domain.dynamics import comfort_gain, rigid_loads
from src.modules.controller.domain.state import ConstraintSettings, ControllerPorts, ControllerState
from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.plant import steady_state_residual
from src.modules.grid.domain.state import GridInput, GridState
from src.modules.grid.domain.topology import GridTopology
from src.modules.welfare.domain.quadratic_program import QpSolution
from src.modules.welfare.domain.weights import WelfareWeights

_TINY = np.finfo(float).tiny


def _relative(residual: np.ndarray, scale: np.ndarray) -> float:
    if residual.size == 0:
        return 0.0
    return float(np.max(np.abs(residual) / np.maximum(scale, _TINY)))


def _absolute(residual: np.ndarray) -> float:
    return float(np.max(np.abs(residual))) if residual.size else 0.0


@dataclass(frozen=True)
class KktResidual:
    """
    Max-norm KKT residual with a per-condition breakdown.

    Relative values divide each equation by the sum of magnitudes of its terms.
    """

    absolute: float
    relative: float
    breakdown: dict[str, float]
    relative_breakdown: dict[str, float]

    def worst(self) -> str:
        return max(self.breakdown, key=self.breakdown.get)

    def to_dict(self) -> dict:
        return {
            "absolute": self.absolute,
            "relative": self.relative,
            "breakdown": dict(self.breakdown),
            "relative_breakdown": dict(self.relative_breakdown),
        }


def kkt_residual(
    cstate: ControllerState,
    params: GridParameters,
    weights: WelfareWeights,
    topology: GridTopology,
    ports: ControllerPorts | None = None,
    constraints: ConstraintSettings | None = None,
) -> KktResidual:
    """
    Residual of the KKT conditions of the welfare problem.

    Stationarity in u_s, u_l, I_s and V, the two equality constraints, and,
    when the voltage band is on, primal and dual feasibility plus
    complementary slackness of eta. Attached ports add the penalty -nu^T u.
    At an active load bound the u_l stationarity residual only counts its
    part pointing into the box; rigid loads use u_l - 1.
    """
    constraints = constraints or ConstraintSettings.unconstrained()
    n = topology.n
    ports = ports or ControllerPorts.zeros(n)
    laplacian = topology.weighted_laplacian(params.R)
    abs_laplacian = np.abs(laplacian)
    comfort = comfort_gain(params, weights.alpha)
    rigid = rigid_loads(params)
    c = cstate

    terms: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    terms["stationarity_u_s"] = (
        weights.beta * c.u_s_star + c.lambda_a - ports.nu_s,
        np.abs(weights.beta * c.u_s_star) + np.abs(c.lambda_a) + np.abs(ports.nu_s),
    )

    load_grad = -comfort * (1.0 - c.u_l_star) - params.I_l * c.lambda_b - ports.nu_l
    load_scale = np.abs(comfort * (1.0 - c.u_l_star)) + np.abs(params.I_l * c.lambda_b) + np.abs(ports.nu_l)
    if constraints.load_box:
        load_grad = np.where(c.u_l_star <= params.u_l_min, np.minimum(load_grad, 0.0), load_grad)
        load_grad = np.where(c.u_l_star >= 1.0, np.maximum(load_grad, 0.0), load_grad)
    load_grad = np.where(rigid, c.u_l_star - 1.0, load_grad)
    load_scale = np.where(rigid, np.abs(c.u_l_star) + 1.0, load_scale)
    terms["stationarity_u_l"] = (load_grad, load_scale)

    terms["stationarity_I_s"] = (
        weights.alpha / params.pi_c * c.I_s_star - params.R_s * c.lambda_a + c.lambda_b,
        np.abs(weights.alpha / params.pi_c * c.I_s_star) + np.abs(params.R_s * c.lambda_a) + np.abs(c.lambda_b),
    )

    terms["stationarity_V"] = (
        weights.gamma * (c.V_star - params.V_d) - c.lambda_a - laplacian @ c.lambda_b + c.eta_upper - c.eta_lower,
        weights.gamma * (np.abs(c.V_star) + np.abs(params.V_d))
        + np.abs(c.lambda_a)
        + abs_laplacian @ np.abs(c.lambda_b)
        + np.abs(c.eta_upper)
        + np.abs(c.eta_lower),
    )

    terms["source_balance"] = (
        c.u_s_star - params.R_s * c.I_s_star - c.V_star,
        np.abs(c.u_s_star) + np.abs(params.R_s * c.I_s_star) + np.abs(c.V_star),
    )

    terms["current_balance"] = (
        -params.I_l * c.u_l_star + c.I_s_star - laplacian @ c.V_star,
        np.abs(params.I_l * c.u_l_star) + np.abs(c.I_s_star) + abs_laplacian @ np.abs(c.V_star),
    )

    if constraints.voltage_band:
        terms["voltage_band"] = (
            np.maximum(c.V_star - params.V_max, 0.0) + np.maximum(params.V_min - c.V_star, 0.0),
            np.abs(c.V_star) + np.abs(params.V_max),
        )
        terms["eta_sign"] = (
            np.minimum(c.eta_lower, 0.0) + np.minimum(c.eta_upper, 0.0),
            np.abs(c.eta_lower) + np.abs(c.eta_upper),
        )
        terms["complementarity"] = (
            np.abs(c.eta_lower * (c.V_star - params.V_min)) + np.abs(c.eta_upper * (params.V_max - c.V_star)),
            np.abs(c.eta_lower) * (np.abs(c.V_star) + np.abs(params.V_min))
            + np.abs(c.eta_upper) * (np.abs(c.V_star) + np.abs(params.V_max)),
        )

    breakdown = {name: _absolute(residual) for name, (residual, _) in terms.items()}
    relative_breakdown = {name: _relative(residual, scale) for name, (residual, scale) in terms.items()}
    return KktResidual(
        absolute=max(breakdown.values()),
        relative=max(relative_breakdown.values()),
        breakdown=breakdown,
        relative_breakdown=relative_breakdown,
    )


def controller_state_from_qp(solution: QpSolution, n: int) -> ControllerState:
    """
    Map an optimum of full_welfare_qp to the controller state it corresponds to.

    Equality multipliers become lambda_a and lambda_b; the voltage-bound
    multipliers become eta.
    """
    x = solution.x
    y = solution.multipliers
    return ControllerState(
        u_s_star=x[:n].copy(),
        u_l_star=x[n:2 * n].copy(),
        I_s_star=x[2 * n:3 * n].copy(),
        V_star=x[3 * n:].copy(),
        lambda_a=y[:n].copy(),
        lambda_b=y[n:2 * n].copy(),
        eta_lower=solution.lower_multipliers[3 * n:].copy(),
        eta_upper=solution.upper_multipliers[3 * n:].copy(),
    )


@dataclass(frozen=True)
class LossIdentityReport:
    """
    Balance between the penalty -nu^T u and the losses in filters and lines.

        lhs = I_s^T u_s - V^T I_l u_l,  rhs = I_s^T R_s I_s + V^T L V

    precondition_met is False when the state is not a steady state of the input.
    """

    lhs: float
    rhs: float
    gap: float
    relative_gap: float
    steady_residual: float
    precondition_met: bool

    def holds(self, tolerance: float = 1e-8) -> bool:
        return self.precondition_met and self.relative_gap <= tolerance

    def to_dict(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "relative_gap": self.relative_gap,
            "steady_residual": self.steady_residual,
            "precondition_met": self.precondition_met,
        }


def loss_penalty_identity(
    gstate: GridState,
    grid_input: GridInput,
    params: GridParameters,
    topology: GridTopology,
    steady_tolerance: float = 1e-9,
) -> LossIdentityReport:
    """
    Evaluate the filter-loss identity at a steady state.

    The steady-state residual is checked first (relative, see
    steady_state_residual); a failing precondition is reported, not raised.
    """
    _, relative_residual = steady_state_residual(gstate, grid_input, params, topology)
    laplacian = topology.weighted_laplacian(params.R)
    load = params.I_l * grid_input.applied_load()

    supplied = float(gstate.I_s @ grid_input.u_s)
    consumed = float(gstate.V @ load)
    filter_loss = float(gstate.I_s @ (params.R_s * gstate.I_s))
    line_loss = float(gstate.V @ laplacian @ gstate.V)

    lhs = supplied - consumed
    rhs = filter_loss + line_loss
    gap = abs(lhs - rhs)
    scale = abs(supplied) + abs(consumed) + abs(filter_loss) + abs(line_loss)

    return LossIdentityReport(
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        relative_gap=gap / scale if scale > 0.0 else 0.0,
        steady_residual=relative_residual,
        precondition_met=relative_residual <= steady_tolerance,
    )
