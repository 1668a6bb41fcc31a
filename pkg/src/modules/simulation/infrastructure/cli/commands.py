"""Subcommands of the simulation module: run, preset, validate, oracle, batch."""

import argparse
from pathlib import Path

from src.config.settings import get_settings
from src.dependencies import (
    get_config_source,
    get_export_trace_use_case,
    get_run_batch_use_case,
    get_run_oracle_suite_use_case,
    get_run_scenario_use_case,
    get_validate_config_use_case,
)
from src.modules.simulation.application.dtos import (
    ExportTraceRequest,
    OracleSuiteRequest,
    RunScenarioRequest,
    ValidateConfigRequest,
)
from src.modules.simulation.domain.errors import OracleFailureError
from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.shared.utils.logger import Logger

logger = Logger("CLI:SIMULATION")


def register_commands(subparsers: argparse._SubParsersAction) -> None:
    """Add the simulation subcommands to the application parser."""
    run = subparsers.add_parser("run", help="Run a scenario file")
    run.add_argument("config", type=Path, help="Scenario TOML file")
    _add_run_options(run)
    run.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a dotted config key (repeatable), e.g. weights.gamma=2",
    )
    run.set_defaults(handler=run_command)

    preset = subparsers.add_parser("preset", help="Run one of the shipped scenarios")
    preset.add_argument("number", type=int, choices=[1, 2, 3, 4], help="Scenario number")
    _add_run_options(preset)
    preset.set_defaults(handler=preset_command, overrides=[])

    validate = subparsers.add_parser("validate", help="Parse and validate a scenario file")
    validate.add_argument("config", type=Path, help="Scenario TOML file")
    validate.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    validate.set_defaults(handler=validate_command)

    oracle = subparsers.add_parser("oracle", help="Run the verification oracles")
    oracle.add_argument("--instances", type=int, default=None, help="Random instances per oracle")
    oracle.add_argument("--seed", type=int, default=None, help="Base seed of the random instances")
    oracle.set_defaults(handler=oracle_command)

    batch = subparsers.add_parser("batch", help="Run several scenario files concurrently")
    batch.add_argument("configs", type=Path, nargs="+", help="Scenario TOML files")
    batch.add_argument("--workers", type=int, default=None, help="Worker processes (default: CPU count)")
    batch.set_defaults(handler=batch_command)


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="Replace the scenario seed")
    parser.add_argument("--out", type=Path, default=None, help="Output directory")
    parser.add_argument("--plot", action="store_true", help="Also write SVG plots")


# ==================== Handlers ====================

def run_command(args: argparse.Namespace) -> int:
    config = get_config_source().load(args.config, args.overrides, args.seed)
    return _run_and_export(config, args.out, args.plot)


def preset_command(args: argparse.Namespace) -> int:
    source = get_config_source()
    config = source.load(source.preset_path(args.number), [], args.seed)
    return _run_and_export(config, args.out, args.plot)


def validate_command(args: argparse.Namespace) -> int:
    config = get_validate_config_use_case().execute(
        ValidateConfigRequest(path=args.config, overrides=list(args.overrides))
    )
    print(f"{args.config}: valid scenario '{config.name}' (seed {config.seed}, n = {config.grid.n})")
    return 0


def oracle_command(args: argparse.Namespace) -> int:
    settings = get_settings()
    request = OracleSuiteRequest(
        instances=args.instances if args.instances is not None else settings.oracle_instances,
        seed=args.seed if args.seed is not None else settings.oracle_seed,
    )
    report = get_run_oracle_suite_use_case().execute(request)
    print("\n".join(report.table_lines()))
    if not report.passed:
        raise OracleFailureError([check.to_dict() for check in report.failures])
    return 0


def batch_command(args: argparse.Namespace) -> int:
    source = get_config_source()
    configs = [source.load(path) for path in args.configs]
    certificates = get_run_batch_use_case(args.workers).execute(configs)
    for path, certificate in zip(args.configs, certificates):
        print(
            f"{path}: converged={certificate.converged} "
            f"reduction={certificate.reduction_percent:.2f} % "
            f"average_voltage={certificate.average_voltage:.4f} V"
        )
    return 0


def _run_and_export(config: ScenarioConfig, out: Path | None, plot: bool) -> int:
    response = get_run_scenario_use_case().execute(RunScenarioRequest(config=config))
    print("\n".join(response.certificate.summary_lines()))

    directory = out or (Path(config.output.dir) if config.output.dir else None)
    if directory is not None:
        paths = get_export_trace_use_case().execute(ExportTraceRequest(
            trace=response.trace,
            certificate=response.certificate,
            directory=directory,
            plot=plot or config.output.plot,
        ))
        logger.info("Results exported", extra={"directory": str(directory), "files": len(paths)})
    return 0
