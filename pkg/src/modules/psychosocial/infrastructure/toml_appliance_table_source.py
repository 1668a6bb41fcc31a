"""TOML implementation of ApplianceTableSource."""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path

from src.modules.psychosocial.application.ports.appliance_table_source import ApplianceTableSource
from src.modules.psychosocial.domain.appliance import ApplianceModel, ApplianceTable, ScaleStatistics
from src.modules.psychosocial.domain.errors import SurveyDataError
from src.shared.utils.logger import Logger

DEFAULT_DATASET = Path(__file__).parent / "data" / "appliances.toml"

_APPLIANCE_KEYS = {"name", "mu", "theta", "epsilon", "omega", "survey_mean"}


class TomlApplianceTableSource(ApplianceTableSource):
    """Reads appliance tables from TOML files with [[appliances]] rows and [scales.*] tables."""

    def __init__(self, default_path: Path = DEFAULT_DATASET) -> None:
        self._default_path = default_path
        self._logger = Logger("PSYCHOSOCIAL:APPLIANCE_TABLE")

    def load(self, path: Path | None = None) -> ApplianceTable:
        source = Path(path) if path is not None else self._default_path

        try:
            with source.open("rb") as handle:
                document = tomllib.load(handle)
        except OSError as exc:
            raise SurveyDataError(f"Cannot read appliance table '{source}': {exc}", field="path") from exc
        except tomllib.TOMLDecodeError as exc:
            raise SurveyDataError(f"Malformed appliance table '{source}': {exc}", field="path") from exc

        table = self.from_document(document)
        self._logger.info(
            "Appliance table loaded",
            extra={"path": str(source), "appliances": len(table.models)},
        )
        return table

    @staticmethod
    def from_document(document: dict) -> ApplianceTable:
        """Build a table from an already parsed TOML document."""
        rows = document.get("appliances")
        if not isinstance(rows, list) or not rows:
            raise SurveyDataError("Appliance table needs a non-empty [[appliances]] array", field="appliances")

        models = []
        for index, row in enumerate(rows):
            unknown = set(row) - _APPLIANCE_KEYS
            missing = {"name", "mu", "theta", "epsilon", "omega"} - set(row)
            if unknown or missing:
                raise SurveyDataError(
                    f"appliances[{index}]: unknown keys {sorted(unknown)}, missing keys {sorted(missing)}",
                    field=f"appliances[{index}]",
                )
            models.append(
                ApplianceModel(
                    name=str(row["name"]),
                    mu=float(row["mu"]),
                    theta=float(row["theta"]),
                    epsilon=float(row["epsilon"]),
                    omega=float(row["omega"]),
                    survey_mean=float(row["survey_mean"]) if "survey_mean" in row else None,
                )
            )

        scales = document.get("scales", {})
        kwargs = {}
        for scale in ("stv", "sev"):
            if scale in scales:
                kwargs[scale] = ScaleStatistics(mean=float(scales[scale]["mean"]), sd=float(scales[scale]["sd"]))

        return ApplianceTable(models=tuple(models), **kwargs)
