"""Composition root: builds adapters and wires them into use cases."""

from functools import lru_cache

from src.config.settings import Settings, get_settings

from src.modules.psychosocial.application.ports.appliance_table_source import ApplianceTableSource
from src.modules.simulation.application.ports.config_source import ConfigSource
from src.modules.simulation.application.ports.trace_exporter import TraceExporter

from src.modules.psychosocial.infrastructure.toml_appliance_table_source import TomlApplianceTableSource
from src.modules.simulation.infrastructure.toml_config_source import TomlConfigSource
from src.modules.simulation.infrastructure.file_trace_exporter import FileTraceExporter

from src.modules.simulation.application.dtos import RunScenarioRequest
from src.modules.simulation.application.use_cases.export_trace import ExportTraceUseCase
from src.modules.simulation.application.use_cases.run_batch import RunBatchUseCase
from src.modules.simulation.application.use_cases.run_oracle_suite import RunOracleSuiteUseCase
from src.modules.simulation.application.use_cases.run_scenario import RunScenarioUseCase
from src.modules.simulation.application.use_cases.validate_config import ValidateConfigUseCase
from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.modules.simulation.domain.trace import RunCertificate


# ============================================
# SETTINGS
# ============================================

def get_settings_dependency() -> Settings:
    """Get application settings."""
    return get_settings()


# ============================================
# ADAPTERS
# ============================================

@lru_cache
def get_appliance_source() -> ApplianceTableSource:
    """Get appliance table source (shipped dataset by default)."""
    return TomlApplianceTableSource()


def get_config_source() -> ConfigSource:
    """Get scenario configuration source."""
    settings = get_settings_dependency()
    return TomlConfigSource(presets_dir=settings.presets_path, strict=settings.strict_config)


def get_trace_exporter() -> TraceExporter:
    """Get trace exporter."""
    return FileTraceExporter(plot_format=get_settings_dependency().plot_format)


# ============================================
# USE CASES
# ============================================

def get_run_scenario_use_case() -> RunScenarioUseCase:
    """Get run scenario use case."""
    return RunScenarioUseCase(appliance_source=get_appliance_source())


def get_validate_config_use_case() -> ValidateConfigUseCase:
    """Get validate config use case."""
    return ValidateConfigUseCase(config_source=get_config_source())


def get_export_trace_use_case() -> ExportTraceUseCase:
    """Get export trace use case."""
    return ExportTraceUseCase(exporter=get_trace_exporter())


def get_run_oracle_suite_use_case() -> RunOracleSuiteUseCase:
    """Get oracle suite use case."""
    return RunOracleSuiteUseCase(appliance_source=get_appliance_source())


def run_certificate(config: ScenarioConfig) -> RunCertificate:
    """Batch worker: run one scenario in the current process and keep its certificate."""
    return get_run_scenario_use_case().execute(RunScenarioRequest(config=config)).certificate


def get_run_batch_use_case(max_workers: int | None = None) -> RunBatchUseCase:
    """Get batch use case running scenarios in worker processes."""
    return RunBatchUseCase(worker=run_certificate, max_workers=max_workers)
