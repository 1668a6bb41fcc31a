"""Unit tests for TomlApplianceTableSource."""

import pytest

from src.modules.psychosocial.domain.errors import SurveyDataError
from src.modules.psychosocial.infrastructure.toml_appliance_table_source import TomlApplianceTableSource


class TestTomlApplianceTableSource:
    """Tests for TomlApplianceTableSource."""

    def test_loads_shipped_dataset(self):
        """Should read six appliances with survey means."""
        table = TomlApplianceTableSource().load()

        assert len(table.models) == 6
        assert table.get("thermostat").survey_mean == 3.50

    def test_custom_path(self, tmp_path):
        """Should read a table from a given file."""
        path = tmp_path / "table.toml"
        path.write_text(
            '[[appliances]]\nname = "heater"\nmu = 0.5\ntheta = 0.1\nepsilon = 0.05\nomega = 1.0\n',
            encoding="utf-8",
        )

        table = TomlApplianceTableSource().load(path)

        assert table.names == ("heater",)

    def test_missing_file_raises_error(self, tmp_path):
        """Should report an unreadable table."""
        with pytest.raises(SurveyDataError) as exc_info:
            TomlApplianceTableSource().load(tmp_path / "absent.toml")

        assert exc_info.value.code == "SURVEY_DATA_ERROR"

    def test_malformed_file_raises_error(self, tmp_path):
        """Should report a syntax error as survey data error."""
        path = tmp_path / "table.toml"
        path.write_text("[[appliances]\n", encoding="utf-8")

        with pytest.raises(SurveyDataError):
            TomlApplianceTableSource().load(path)

    def test_unknown_key_raises_error(self):
        """Should name the offending row."""
        document = {"appliances": [{"name": "a", "mu": 0.5, "theta": 0.1, "epsilon": 0.1, "omega": 1.0, "beta": 2}]}

        with pytest.raises(SurveyDataError) as exc_info:
            TomlApplianceTableSource.from_document(document)

        assert exc_info.value.details["field"] == "appliances[0]"

    def test_empty_table_raises_error(self):
        """Should require at least one appliance."""
        with pytest.raises(SurveyDataError):
            TomlApplianceTableSource.from_document({"appliances": []})
