"""Appliance table source interface (port)."""

from abc import ABC, abstractmethod
from pathlib import Path

from src.modules.psychosocial.domain.appliance import ApplianceTable


class ApplianceTableSource(ABC):
    """
    Abstract source of appliance coefficients and survey statistics.

    The shipped dataset is the default; a path replaces it with updated coefficients.
    """

    @abstractmethod
    def load(self, path: Path | None = None) -> ApplianceTable:
        """
        Load an appliance table.

        Args:
            path: Optional data file replacing the default dataset

        Returns:
            Validated ApplianceTable

        Raises:
            SurveyDataError: If the file cannot be read or parsed
            FlexibilityParameterError: If coefficients violate their invariants
        """
        pass
