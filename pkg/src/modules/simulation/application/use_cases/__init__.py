"""Simulation use cases - application orchestration."""

from src.modules.simulation.application.use_cases.run_scenario import RunScenarioUseCase
from src.modules.simulation.application.use_cases.validate_config import ValidateConfigUseCase
from src.modules.simulation.application.use_cases.export_trace import ExportTraceUseCase
from src.modules.simulation.application.use_cases.run_oracle_suite import RunOracleSuiteUseCase
from src.modules.simulation.application.use_cases.run_batch import RunBatchUseCase

__all__ = [
    "RunScenarioUseCase",
    "ValidateConfigUseCase",
    "ExportTraceUseCase",
    "RunOracleSuiteUseCase",
    "RunBatchUseCase",
]
