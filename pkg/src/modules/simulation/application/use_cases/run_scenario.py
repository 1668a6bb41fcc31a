"""Run scenario use case."""

from pathlib import Path

from src.modules.psychosocial.application.ports.appliance_table_source import ApplianceTableSource
from src.modules.simulation.application.dtos import RunScenarioRequest, ScenarioRunResponse
from src.modules.simulation.domain.certificate import build_certificate
from src.modules.simulation.domain.closed_loop import polish_equilibrium
from src.modules.simulation.domain.scenario_setup import assemble_scenario
from src.modules.simulation.domain.simulate import IntegrationSettings, integrate
from src.shared.utils.logger import Logger


class RunScenarioUseCase:
    """
    Use case for running one closed-loop scenario.

    This use case orchestrates:
    1. Loading the appliance table behind profile-based flexibility
    2. Parameter draws, comfort tuning and closed-loop assembly
    3. Time integration with convergence detection
    4. Polishing the final state onto the exact equilibrium of its active set
    5. Certificate collection
    """

    def __init__(self, appliance_source: ApplianceTableSource) -> None:
        """
        Initialize use case with dependencies.

        Args:
            appliance_source: Source of appliance coefficients
        """
        self._appliance_source = appliance_source
        self._logger = Logger("USE_CASE:RUN_SCENARIO")

    def execute(self, request: RunScenarioRequest) -> ScenarioRunResponse:
        """
        Execute the run scenario use case.

        Args:
            request: The run scenario request DTO

        Returns:
            Certificate, trace, assembled setup and the certified final state

        Raises:
            DivergenceError: If the state norm exceeds the divergence threshold
            NumericInstabilityError: If the state becomes non-finite
            DomainError: If parameters or flexibility inputs are invalid
        """
        config = request.config
        self._logger.info(
            "Running scenario",
            extra={"scenario": config.name, "seed": config.seed, "n": config.grid.n},
        )

        table_path = config.flexibility.appliance_table
        table = self._appliance_source.load(Path(table_path) if table_path else None)

        setup = assemble_scenario(config, table, initial_seed=request.initial_seed)
        self._logger.info(
            "Scenario assembled",
            extra={
                "flexibility_level": setup.flexibility_level,
                "pi_u_sum": float(setup.params.pi_u.sum()),
                "total_demand": setup.params.total_demand(),
            },
        )

        integration = config.integration
        settings = IntegrationSettings(
            method=integration.method,
            step=integration.step,
            max_steps=integration.max_steps,
            tolerance=integration.tolerance,
            window=integration.window,
            record_every=integration.record_every,
            divergence_threshold=integration.divergence_threshold,
        )
        result = integrate(setup.system, settings, setup.initial)

        final_state = result.final_state
        polished = False
        if integration.polish:
            candidate = polish_equilibrium(setup.system, final_state)
            if candidate is not None:
                final_state, polished = candidate, True
            else:
                self._logger.warning("Polishing rejected; certifying the integrated state")

        certificate = build_certificate(
            scenario=config.name,
            system=setup.system,
            result=result,
            final_state=final_state,
            polished=polished,
            flexibility_level=setup.flexibility_level,
        )

        self._logger.info(
            "Scenario finished",
            extra={
                "converged": certificate.converged,
                "reduction_percent": certificate.reduction_percent,
                "average_voltage": certificate.average_voltage,
                "kkt_residual": certificate.kkt_residual,
            },
        )
        return ScenarioRunResponse(certificate=certificate, trace=result.trace, setup=setup, final_state=final_state)
