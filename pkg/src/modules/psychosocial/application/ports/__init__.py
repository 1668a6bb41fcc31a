"""Psychosocial application ports."""

from src.modules.psychosocial.application.ports.appliance_table_source import ApplianceTableSource

__all__ = ["ApplianceTableSource"]
