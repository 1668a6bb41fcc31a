"""Application ports (interfaces) for external dependencies."""

from src.modules.simulation.application.ports.config_source import ConfigSource
from src.modules.simulation.application.ports.trace_exporter import TraceExporter

__all__ = [
    "ConfigSource",
    "TraceExporter",
]
