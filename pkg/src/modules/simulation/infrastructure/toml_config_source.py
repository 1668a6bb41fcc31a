"""TOML implementation of ConfigSource."""

import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.modules.simulation.application.ports.config_source import ConfigSource
from src.modules.simulation.domain.errors import ConfigParseError, ConfigValidationError
from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.shared.utils.logger import Logger

_POSITION = re.compile(r"line (\d+), column (\d+)")


def parse_override(assignment: str) -> tuple[list[str], Any]:
    """
    Split "dotted.key=value" into its key path and value.

    The value is read as a TOML literal ("2", "[1, 2]", "true", "'x'");
    anything that is not a literal is kept as a plain string.

    Raises:
        ConfigValidationError: If the assignment has no '=' or an empty key
    """
    key, separator, raw = assignment.partition("=")
    path = [part.strip() for part in key.split(".")]
    if not separator or not all(path):
        raise ConfigValidationError(
            f"Override '{assignment}' must look like dotted.key=value",
            errors=[{"field": key.strip() or "<override>", "reason": "malformed override"}],
        )
    try:
        value = tomllib.loads(f"value = {raw.strip()}")["value"]
    except tomllib.TOMLDecodeError:
        value = raw.strip()
    return path, value


def apply_overrides(document: dict, overrides: list[str]) -> dict:
    """Return a copy of the document with every override assigned in order."""
    result = _deep_copy(document)
    for assignment in overrides:
        path, value = parse_override(assignment)
        table = result
        for part in path[:-1]:
            child = table.get(part)
            if not isinstance(child, dict):
                child = {}
                table[part] = child
            table = child
        table[path[-1]] = value
    return result


def _deep_copy(document: dict) -> dict:
    return {key: _deep_copy(value) if isinstance(value, dict) else value for key, value in document.items()}


def _field_path(location: tuple) -> str:
    return ".".join(str(part) for part in location) or "<root>"


def _drop_key(document: dict, location: tuple) -> None:
    table: Any = document
    for part in location[:-1]:
        table = table[part]
    table.pop(location[-1], None)


class TomlConfigSource(ConfigSource):
    """
    Reads scenario files written in TOML.

    With strict=False unknown keys are dropped with a warning instead of
    failing validation.
    """

    def __init__(self, presets_dir: Path, strict: bool = True) -> None:
        self._presets_dir = Path(presets_dir)
        self._strict = strict
        self._logger = Logger("SIM:CONFIG")

    def load(
        self,
        path: Path,
        overrides: list[str] | None = None,
        seed: int | None = None,
    ) -> ScenarioConfig:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigParseError(f"Cannot read scenario file: {exc}", path=str(path)) from exc

        document = self.parse(text, str(path))
        document = apply_overrides(document, overrides or [])
        if seed is not None:
            document["seed"] = seed

        config = self.validate(document)
        self._logger.info(
            "Scenario loaded",
            extra={"path": str(path), "scenario": config.name, "overrides": len(overrides or [])},
        )
        return config

    def preset_path(self, number: int) -> Path:
        path = self._presets_dir / f"scenario{number}.toml"
        if not path.is_file():
            raise ConfigValidationError(
                f"No preset scenario {number}",
                errors=[{"field": "preset", "reason": f"{path} does not exist"}],
            )
        return path

    @staticmethod
    def parse(text: str, source: str = "<string>") -> dict:
        """
        Raises:
            ConfigParseError: With the line and column reported by the decoder
        """
        try:
            return tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            line = getattr(exc, "lineno", None)
            column = getattr(exc, "colno", None)
            if line is None:
                match = _POSITION.search(str(exc))
                if match:
                    line, column = int(match.group(1)), int(match.group(2))
            raise ConfigParseError(f"Malformed scenario file: {exc}", path=source, line=line, column=column) from exc

    def validate(self, document: dict) -> ScenarioConfig:
        """
        Raises:
            ConfigValidationError: With the dotted field path of every violation
        """
        try:
            return ScenarioConfig.model_validate(document)
        except ValidationError as exc:
            errors = exc.errors()
            unknown = [error["loc"] for error in errors if error["type"] == "extra_forbidden"]
            if not self._strict and unknown and len(unknown) == len(errors):
                document = _deep_copy(document)
                for location in unknown:
                    self._logger.warning("Ignoring unknown key", extra={"field": _field_path(location)})
                    _drop_key(document, location)
                return self.validate(document)

            details = [{"field": _field_path(error["loc"]), "reason": error["msg"]} for error in errors]
            first = details[0]
            raise ConfigValidationError(f"{first['field']}: {first['reason']}", errors=details) from exc
