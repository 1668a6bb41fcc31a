"""Steady-state certificate of a finished run."""

import numpy as np

from src.modules.controller.domain.dynamics import interconnect
from src.modules.controller.domain.optimality import kkt_residual, loss_penalty_identity
from src.modules.grid.domain.plant import steady_state_residual
from src.modules.simulation.domain.closed_loop import ClosedLoopSystem
from src.modules.simulation.domain.simulate import (
    IntegrationResult,
    average_voltage,
    rate_ratio,
    trace_dissipation,
)
from src.modules.simulation.domain.trace import RunCertificate
from src.modules.welfare.domain.errors import WelfareError
from src.modules.welfare.domain.ideal_optimum import ideal_welfare_optimum

BAND_TOLERANCE = 1e-6


def benchmark_reduction_percent(system: ClosedLoopSystem) -> float:
    """Curtailment of the unconstrained ideal optimum, in percent of total demand."""
    params = system.params
    try:
        ideal = ideal_welfare_optimum(params.I_l, params.pi_c, params.pi_u)
    except WelfareError:
        return float("nan")
    return 100.0 * float(ideal.consumption_reduction(params.I_l).sum()) / params.total_demand()


def build_certificate(
    scenario: str,
    system: ClosedLoopSystem,
    result: IntegrationResult,
    final_state: np.ndarray,
    polished: bool,
    flexibility_level: float,
) -> RunCertificate:
    """
    Evaluate residuals and welfare quantities at the final closed-loop state.

    Args:
        scenario: Scenario name
        system: Closed loop that was integrated
        result: Outcome of the integration
        final_state: Stacked state to certify (the polished equilibrium when available)
        polished: Whether final_state came from polishing
        flexibility_level: Community flexibility level used for comfort tuning
    """
    params = system.params
    gstate, cstate = system.unpack(final_state)
    grid_input, ports = interconnect(gstate, cstate, params)

    plant_absolute, plant_relative = steady_state_residual(gstate, grid_input, params, system.topology)
    kkt = kkt_residual(cstate, params, system.gains.weights, system.topology, ports, system.constraints)
    loss = loss_penalty_identity(gstate, grid_input, params, system.topology)

    u_l = grid_input.applied_load()
    total_demand = params.total_demand()
    reduction = float(np.sum(params.I_l * (1.0 - u_l)))

    gamma = system.gains.weights.gamma
    voltage_gap = abs(
        gamma * float(np.sum(cstate.V_star - params.V_d))
        - float(np.sum(cstate.lambda_a + cstate.eta_lower - cstate.eta_upper))
    )
    sharing = gstate.I_s / params.pi_c

    return RunCertificate(
        scenario=scenario,
        converged=result.converged,
        convergence_time=result.convergence_time,
        steps=result.steps,
        polished=polished,
        steady_state=gstate,
        u_l=u_l,
        kkt_residual=kkt.absolute,
        kkt_relative=kkt.relative,
        plant_residual=plant_absolute,
        plant_relative=plant_relative,
        max_rate_ratio=rate_ratio(system, final_state),
        voltage_band_ok=bool(
            np.all(gstate.V >= params.V_min - BAND_TOLERANCE) and np.all(gstate.V <= params.V_max + BAND_TOLERANCE)
        ),
        min_voltage=float(gstate.V.min()),
        max_voltage=float(gstate.V.max()),
        average_voltage=average_voltage(gstate.V, params.pi_c),
        voltage_identity_gap=voltage_gap,
        total_demand=total_demand,
        consumption_reduction=reduction,
        reduction_percent=100.0 * reduction / total_demand,
        benchmark_reduction_percent=benchmark_reduction_percent(system),
        flexibility_level=flexibility_level,
        sharing_spread=float(sharing.max() - sharing.min()),
        loss_identity_gap=loss.relative_gap,
        lyapunov_violations=result.lyapunov_violations,
        dissipation_margin=trace_dissipation(system, result.trace).margin,
        active_constraints=system.active_set(final_state).to_dict(),
    )
