"""Assembly of a runnable closed loop from a scenario configuration."""

from dataclasses import dataclass

import numpy as np

from src.modules.controller.domain.dynamics import clip_to_box
from src.modules.controller.domain.state import ControllerState
from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.state import GridState
from src.modules.grid.domain.topology import GridTopology
from src.modules.psychosocial.domain.appliance import ApplianceTable
from src.modules.psychosocial.domain.comfort_tuning import tune_pi_u
from src.modules.psychosocial.domain.flexibility import community_flexibility, flexibility_level
from src.modules.simulation.domain.closed_loop import ClosedLoopSystem, closed_loop_equilibrium
from src.modules.simulation.domain.parameter_draws import draw_parameters
from src.modules.simulation.domain.scenario_config import ScenarioConfig


@dataclass(frozen=True)
class ScenarioSetup:
    topology: GridTopology
    params: GridParameters
    system: ClosedLoopSystem
    flexibility_level: float
    initial: np.ndarray


def random_streams(seed: int) -> list[np.random.Generator]:
    """Parameter, comfort and initial-condition generators spawned from one seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(3)]


def resolve_flexibility(
    config: ScenarioConfig,
    table: ApplianceTable,
    I_l: np.ndarray,
) -> tuple[float, np.ndarray | None]:
    """
    Flexibility level of the community and, for per-prosumer profiles, comfort shares.
    """
    flexibility = config.flexibility
    if flexibility.source == "ceiling":
        return flexibility.psi, None
    if flexibility.source == "explicit":
        return float(flexibility.level), None

    profiles = flexibility.prosumer_profiles()
    if profiles is not None:
        community = community_flexibility(table.models, profiles, I_l, flexibility.psi)
        return community.community, community.comfort_shares(I_l)
    return flexibility_level(table.models, flexibility.community_profile, flexibility.psi).lambda_, None


def cold_start(params: GridParameters, topology: GridTopology) -> tuple[GridState, ControllerState]:
    """V = V* = u_s* = V_d, u_l* = 1, all currents and multipliers zero."""
    gstate = GridState(I_s=np.zeros(topology.n), I=np.zeros(topology.m), V=params.V_d.copy())
    return gstate, ControllerState.cold_start(params)


def random_initial(
    system: ClosedLoopSystem,
    rng: np.random.Generator,
    spread: float,
) -> np.ndarray:
    """
    Cold start perturbed by Gaussian noise scaled to the typical size of each block.

    Controller components are put back into the load box with eta >= 0.
    """
    params = system.params
    layout = system.layout
    gstate, cstate = cold_start(params, system.topology)
    z = system.pack(gstate, cstate)

    mean_load = float(params.I_l.mean())
    typical = np.empty(layout.size)
    typical[layout.block("I_s")] = params.I_l
    typical[layout.block("I")] = mean_load
    typical[layout.block("V")] = 0.01 * params.V_d
    typical[layout.block("u_s")] = 0.01 * params.V_d
    typical[layout.block("u_l")] = 0.25
    typical[layout.block("I_s_star")] = params.I_l
    typical[layout.block("V_star")] = 0.01 * params.V_d
    typical[layout.block("lambda_a")] = mean_load
    typical[layout.block("lambda_b")] = system.gains.weights.alpha * mean_load
    typical[layout.block("eta_lower")] = 1.0
    typical[layout.block("eta_upper")] = 1.0

    z = z + spread * typical * rng.standard_normal(layout.size)
    grid_part, controller = system.unpack(z)
    return system.pack(grid_part, clip_to_box(controller, params, system.constraints))


def assemble_scenario(
    config: ScenarioConfig,
    table: ApplianceTable,
    initial_seed: int | None = None,
) -> ScenarioSetup:
    """
    Draw parameters, tune comfort coefficients and build the closed loop.

    Args:
        config: Validated scenario configuration
        table: Appliance models for profile-based flexibility
        initial_seed: Seed of the random initial condition, replacing the
            scenario's own initial-condition stream

    Raises:
        DomainError subclasses from the grid, psychosocial and simulation layers
    """
    parameter_rng, comfort_rng, initial_rng = random_streams(config.seed)
    if initial_seed is not None:
        initial_rng = np.random.default_rng(initial_seed)

    topology = config.grid.build()
    parameters = config.parameters
    flexibility = config.flexibility

    params = draw_parameters(
        ranges=parameters.ranges.to_domain(),
        topology=topology,
        rng=parameter_rng,
        pi_c=None if parameters.pi_c == "uniform" else np.asarray(parameters.pi_c),
        V_d=parameters.V_d,
        V_min=parameters.V_min,
        V_max=parameters.V_max,
        u_l_min=flexibility.effective_u_l_min(),
        values={name: list(values) for name, values in parameters.values.items()},
    )

    level, shares = resolve_flexibility(config, table, params.I_l)
    adopters = None if flexibility.adopters is None else np.asarray(flexibility.adopters, dtype=bool)
    pi_u = tune_pi_u(level, topology.n, adopters, flexibility.spread(), comfort_rng, shares)
    params = params.with_pi_u(pi_u)

    system = ClosedLoopSystem(params, topology, config.controller_gains(), config.constraints.to_domain())

    integration = config.integration
    if integration.initial == "random":
        initial = random_initial(system, initial_rng, integration.initial_spread)
    elif integration.initial == "equilibrium":
        z = closed_loop_equilibrium(system)
        grid_part, controller = system.unpack(z)
        initial = system.pack(grid_part, clip_to_box(controller, params, system.constraints))
    else:
        initial = system.pack(*cold_start(params, topology))

    return ScenarioSetup(
        topology=topology,
        params=params,
        system=system,
        flexibility_level=level,
        initial=initial,
    )
