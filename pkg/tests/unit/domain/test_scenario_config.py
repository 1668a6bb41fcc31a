"""Unit tests for the scenario configuration models."""

import pytest
from pydantic import ValidationError

from src.modules.simulation.domain.scenario_config import FlexibilityConfig, IntegrationConfig, ScenarioConfig


class TestScenarioConfigDefaults:
    """Tests for ScenarioConfig defaults and conversions."""

    def test_defaults_describe_test_grid(self):
        """Should default to a ten-prosumer ring with the test-grid constants."""
        config = ScenarioConfig()

        assert config.grid.n == 10
        assert config.parameters.ranges.R_s == (1e-3, 2e-3)
        assert config.weights.alpha == 1e6
        assert config.integration.method == "implicit_euler"

    def test_quantity_strings_converted(self):
        """Should read unit-suffixed values and intervals."""
        config = ScenarioConfig.model_validate({
            "parameters": {"V_d": "400 V", "V_min": "399 V", "V_max": "401 V", "ranges": {"L": ["2 uH", "3 uH"]}},
            "integration": {"step": "1e4 s", "horizon": "1e6 s"},
        })

        assert config.parameters.V_d == 400.0
        assert config.parameters.ranges.L == pytest.approx((2e-6, 3e-6))
        assert config.integration.max_steps == 100

    def test_scalar_range_is_degenerate_interval(self):
        """Should read a single quantity as [a, a]."""
        config = ScenarioConfig.model_validate({"parameters": {"ranges": {"I_l": "10 A"}}})

        assert config.parameters.ranges.I_l == (10.0, 10.0)

    def test_grid_builds_topology(self):
        """Should build a ring or an explicit edge list."""
        ring = ScenarioConfig.model_validate({"grid": {"n": 4}}).grid.build()
        path = ScenarioConfig.model_validate({"grid": {"topology": "edges", "n": 3, "edges": [[0, 1], [1, 2]]}}).grid.build()

        assert ring.m == 4
        assert path.m == 2

    def test_controller_gains_carry_weights(self):
        """Should combine time constants and welfare weights."""
        config = ScenarioConfig.model_validate({"gains": {"tau_l": 2.0}, "weights": {"gamma": 3.0}})

        gains = config.controller_gains()

        assert gains.tau_l == 2.0
        assert gains.weights.gamma == 3.0

    def test_config_is_immutable(self):
        """Should refuse attribute assignment."""
        config = ScenarioConfig()

        with pytest.raises(ValidationError):
            config.seed = 3


class TestScenarioConfigValidation:
    """Tests for ScenarioConfig invariant checks."""

    def test_unknown_key_rejected(self):
        """Should reject keys outside the schema."""
        with pytest.raises(ValidationError) as exc_info:
            ScenarioConfig.model_validate({"grid": {"n": 10, "size": 3}})

        assert exc_info.value.errors()[0]["loc"] == ("grid", "size")

    def test_inverted_interval_rejected(self):
        """Should reject low > high."""
        with pytest.raises(ValidationError, match="inverted interval"):
            ScenarioConfig.model_validate({"parameters": {"ranges": {"C": ["3 mF", "2 mF"]}}})

    def test_small_ring_rejected(self):
        """Should require at least three prosumers on a ring."""
        with pytest.raises(ValidationError, match="n >= 3"):
            ScenarioConfig.model_validate({"grid": {"n": 2}})

    def test_band_must_contain_desired_voltage(self):
        """Should require V_min < V_d < V_max."""
        with pytest.raises(ValidationError, match="V_min < V_d < V_max"):
            ScenarioConfig.model_validate({"parameters": {"V_min": "381 V"}})

    def test_explicit_source_needs_level(self):
        """Should require a level for source 'explicit'."""
        with pytest.raises(ValidationError, match="requires level"):
            FlexibilityConfig(source="explicit")

    def test_level_below_one(self):
        """Should reject a flexibility level of one."""
        with pytest.raises(ValidationError):
            FlexibilityConfig(source="explicit", level=1.0)

    def test_literal_dimension_checked(self):
        """Should require one literal per prosumer."""
        with pytest.raises(ValidationError, match="parameters.values.I_l needs 10 entries"):
            ScenarioConfig.model_validate({"parameters": {"values": {"I_l": [10.0, 12.0]}}})

    def test_adopter_mask_dimension_checked(self):
        """Should require one adopter flag per prosumer."""
        with pytest.raises(ValidationError, match="adopters needs 3 entries"):
            ScenarioConfig.model_validate({"grid": {"n": 3}, "flexibility": {"adopters": [True]}})

    def test_horizon_shorter_than_step_rejected(self):
        """Should require at least one step."""
        with pytest.raises(ValidationError, match="shorter than one step"):
            IntegrationConfig(step=10.0, horizon=1.0)


class TestFlexibilityConfig:
    """Tests for FlexibilityConfig helpers."""

    def test_u_l_min_defaults_to_one_minus_psi(self):
        """Should derive the load floor from the ceiling."""
        assert FlexibilityConfig(psi=0.3).effective_u_l_min() == pytest.approx(0.7)

    def test_explicit_u_l_min_wins(self):
        """Should keep a configured floor."""
        assert FlexibilityConfig(psi=0.3, u_l_min=0.5).effective_u_l_min() == 0.5

    def test_prosumer_profiles(self):
        """Should turn score pairs into value profiles."""
        profiles = FlexibilityConfig(profiles=[(1.0, -1.0), (0.0, 0.5)]).prosumer_profiles()

        assert profiles[0].stv == 1.0
        assert profiles[1].sev == 0.5
