"""Psychosocial infrastructure layer."""

from src.modules.psychosocial.infrastructure.toml_appliance_table_source import (
    DEFAULT_DATASET,
    TomlApplianceTableSource,
)

__all__ = ["DEFAULT_DATASET", "TomlApplianceTableSource"]
