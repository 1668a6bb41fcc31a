"""Unit tests for RunScenarioUseCase."""

import numpy as np
import pytest

from src.modules.simulation.application.dtos import RunScenarioRequest
from src.modules.simulation.application.use_cases.run_scenario import RunScenarioUseCase
from src.modules.simulation.domain.scenario_config import ScenarioConfig


class TestRunScenarioUseCase:
    """Tests for RunScenarioUseCase."""

    @pytest.fixture
    def use_case(self, mock_appliance_source) -> RunScenarioUseCase:
        """Create use case with mocked dependencies."""
        return RunScenarioUseCase(appliance_source=mock_appliance_source)

    def test_run_converges_and_certifies(self, use_case, toy_config, mock_appliance_source):
        """Should integrate, polish and certify the toy scenario."""
        response = use_case.execute(RunScenarioRequest(config=toy_config))

        certificate = response.certificate
        assert certificate.scenario == "toy"
        assert certificate.converged
        assert certificate.polished
        assert certificate.kkt_relative < 1e-9
        assert certificate.plant_relative < 1e-10
        assert certificate.voltage_band_ok
        assert certificate.flexibility_level == 0.375
        assert 0.0 < certificate.reduction_percent < 100.0
        mock_appliance_source.load.assert_called_once_with(None)

    def test_response_carries_setup_and_trace(self, use_case, toy_config):
        """Should return the assembled setup and the recorded trace."""
        response = use_case.execute(RunScenarioRequest(config=toy_config))

        np.testing.assert_allclose(response.setup.params.pi_u, np.full(3, 0.2))
        assert response.trace.sample_count >= 2
        assert response.final_state.shape == (33,)

    def test_polish_disabled(self, use_case, toy_document):
        """Should certify the integrated state when polishing is off."""
        toy_document["integration"]["polish"] = False
        config = ScenarioConfig.model_validate(toy_document)

        response = use_case.execute(RunScenarioRequest(config=config))

        assert not response.certificate.polished
        np.testing.assert_array_equal(response.final_state, response.trace.final_state())

    def test_appliance_table_path_forwarded(self, use_case, toy_document, mock_appliance_source, tmp_path):
        """Should load the configured appliance table."""
        table = tmp_path / "appliances.toml"
        toy_document["flexibility"]["appliance_table"] = str(table)
        config = ScenarioConfig.model_validate(toy_document)

        use_case.execute(RunScenarioRequest(config=config))

        mock_appliance_source.load.assert_called_once_with(table)
