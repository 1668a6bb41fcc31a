"""Command-line infrastructure shared by every module."""

from src.shared.infrastructure.cli.app import create_app, run_cli
from src.shared.infrastructure.cli.error_handlers import handle_errors

__all__ = ["create_app", "run_cli", "handle_errors"]
