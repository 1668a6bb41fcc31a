"""Scenario configuration source interface (port)."""

from abc import ABC, abstractmethod
from pathlib import Path

from src.modules.simulation.domain.scenario_config import ScenarioConfig


class ConfigSource(ABC):
    """
    Abstract source of validated scenario configurations.

    Precedence of values: file < overrides < seed.
    """

    @abstractmethod
    def load(
        self,
        path: Path,
        overrides: list[str] | None = None,
        seed: int | None = None,
    ) -> ScenarioConfig:
        """
        Load and validate a scenario file.

        Args:
            path: Scenario document
            overrides: "dotted.key=value" assignments applied on top of the file
            seed: Replaces the scenario seed when given

        Returns:
            Validated ScenarioConfig

        Raises:
            ConfigParseError: If the document is malformed (with line and column)
            ConfigValidationError: If a value violates the schema (with field path)
        """
        pass

    @abstractmethod
    def preset_path(self, number: int) -> Path:
        """
        Location of a shipped preset scenario.

        Raises:
            ConfigValidationError: If no preset with that number exists
        """
        pass
