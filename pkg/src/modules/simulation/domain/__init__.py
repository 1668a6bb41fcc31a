"""Simulation domain layer."""

from src.modules.simulation.domain.errors import (
    ConfigParseError,
    ConfigValidationError,
    DivergenceError,
    ExportError,
    NumericInstabilityError,
    OracleFailureError,
    SimulationError,
)
from src.modules.simulation.domain.units import parse_quantity
from src.modules.simulation.domain.parameter_draws import ParameterRanges, draw_parameters
from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.modules.simulation.domain.closed_loop import (
    ActiveSet,
    ClosedLoopSystem,
    StateLayout,
    closed_loop_equilibrium,
    polish_equilibrium,
)
from src.modules.simulation.domain.integrators import ImplicitEuler, Integrator, RungeKutta4, make_integrator
from src.modules.simulation.domain.trace import RunCertificate, SimTrace, TraceEvent, TraceRecorder
from src.modules.simulation.domain.simulate import (
    IntegrationResult,
    IntegrationSettings,
    average_voltage,
    integrate,
    rate_ratio,
)
from src.modules.simulation.domain.scenario_setup import ScenarioSetup, assemble_scenario, random_streams
from src.modules.simulation.domain.certificate import benchmark_reduction_percent, build_certificate

__all__ = [
    "ConfigParseError",
    "ConfigValidationError",
    "DivergenceError",
    "ExportError",
    "NumericInstabilityError",
    "OracleFailureError",
    "SimulationError",
    "parse_quantity",
    "ParameterRanges",
    "draw_parameters",
    "ScenarioConfig",
    "ActiveSet",
    "ClosedLoopSystem",
    "StateLayout",
    "closed_loop_equilibrium",
    "polish_equilibrium",
    "ImplicitEuler",
    "Integrator",
    "RungeKutta4",
    "make_integrator",
    "RunCertificate",
    "SimTrace",
    "TraceEvent",
    "TraceRecorder",
    "IntegrationResult",
    "IntegrationSettings",
    "average_voltage",
    "integrate",
    "rate_ratio",
    "ScenarioSetup",
    "assemble_scenario",
    "random_streams",
    "build_certificate",
    "benchmark_reduction_percent",
]
