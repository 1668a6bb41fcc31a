"""Application entry point."""

import sys

from src.config.settings import get_settings
from src.shared.infrastructure.cli import run_cli
from src.shared.utils.logger import Logger

logger = Logger("MAIN")


def main() -> int:
    settings = get_settings()

    logger.info("=" * 60)
    logger.info(f"DC GRID WELFARE CONTROLLER {settings.app_version}")
    logger.info("=" * 60)
    logger.info(f"   Environment: {settings.environment}")
    logger.info(f"   Presets:     {settings.presets_dir}")
    logger.info(f"   Debug:       {settings.debug}")
    logger.info("=" * 60)

    return run_cli(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
