"""Global error handlers for the command-line application."""

import json
import sys
from collections.abc import Callable
from typing import Any

from src.shared.domain.errors import DomainError
from src.shared.utils.logger import Logger

logger = Logger("ERROR_HANDLER")


def _make_serializable(obj: Any) -> Any:
    """Convert objects to JSON-serializable types."""
    if isinstance(obj, dict):
        return {str(k): _make_serializable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_make_serializable(item) for item in obj]
    if isinstance(obj, (str, int, float, bool, type(None))):
        return obj
    if hasattr(obj, "item"):
        return obj.item()
    return str(obj)


def _report(payload: dict) -> None:
    print(json.dumps(_make_serializable(payload), indent=2), file=sys.stderr)


def handle_errors(command: Callable[[], int]) -> int:
    """
    Run a command and map failures to exit codes.

    Domain errors exit with their own code and print their payload;
    anything else is logged and exits with 1 and an INTERNAL_ERROR payload.
    """
    try:
        return command()
    except DomainError as exc:
        logger.warning(
            "Command failed",
            extra={"code": exc.code, "message": exc.message, "exit_code": exc.exit_code},
        )
        _report(exc.to_dict())
        return exc.exit_code
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return 130
    except Exception as exc:
        logger.error("Unexpected error", extra={"error": repr(exc)})
        _report({
            "success": False,
            "error": {
                "code": "INTERNAL_ERROR",
                "message": "An unexpected error occurred",
            },
        })
        return 1
