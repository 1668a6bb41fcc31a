"""Validate config use case."""

from src.modules.simulation.application.dtos import ValidateConfigRequest
from src.modules.simulation.application.ports.config_source import ConfigSource
from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.shared.utils.logger import Logger


class ValidateConfigUseCase:
    """Use case for parsing and validating a scenario file without running it."""

    def __init__(self, config_source: ConfigSource) -> None:
        self._config_source = config_source
        self._logger = Logger("USE_CASE:VALIDATE_CONFIG")

    def execute(self, request: ValidateConfigRequest) -> ScenarioConfig:
        """
        Raises:
            ConfigParseError: If the document is malformed
            ConfigValidationError: If a value violates the schema
        """
        self._logger.info("Validating scenario", extra={"path": str(request.path)})
        config = self._config_source.load(request.path, request.overrides, request.seed)
        self._logger.info("Scenario valid", extra={"scenario": config.name, "seed": config.seed})
        return config
