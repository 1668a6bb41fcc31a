"""Command-line application factory."""

import argparse
import sys
from collections.abc import Sequence
from typing import NoReturn

from src.config.settings import get_settings
from src.shared.infrastructure.cli.error_handlers import handle_errors
from src.shared.utils.logger import Logger

logger = Logger("CLI:APP")

USAGE_EXIT_CODE = 1


class CliParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit like validation errors."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT_CODE, f"{self.prog}: error: {message}\n")


def create_app() -> CliParser:
    """
    Create the argument parser with every module's subcommands registered.

    Returns:
        Configured parser; each subcommand stores its handler in `handler`
    """
    settings = get_settings()

    parser = CliParser(
        prog=settings.app_name,
        description=(
            "Closed-loop simulation of a DC microgrid whose prosumers negotiate "
            "load curtailment through a welfare-maximizing primal-dual controller."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")

    # Register commands
    from src.modules.simulation.infrastructure.cli.commands import register_commands
    register_commands(subparsers)

    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments and run the selected command.

    Returns:
        Process exit code: 0 success, 1 parse/validation, 2 divergence, 3 oracle failure
    """
    parser = create_app()
    args = parser.parse_args(argv)
    logger.info("Command started", extra={"command": args.command})
    return handle_errors(lambda: args.handler(args))
