"""Unit tests for quantity parsing and random parameter draws."""

import numpy as np
import pytest

from src.modules.simulation.domain.errors import ConfigValidationError
from src.modules.simulation.domain.parameter_draws import ParameterRanges, draw_parameters
from src.modules.simulation.domain.units import parse_quantity


class TestParseQuantity:
    """Tests for parse_quantity()."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("1.5 mohm", 1.5e-3),
            ("2 uH", 2e-6),
            ("1.8 mH", 1.8e-3),
            ("2.5 mF", 2.5e-3),
            ("380 V", 380.0),
            ("1e5 s", 1e5),
            ("14A", 14.0),
            ("0.075", 0.075),
        ],
    )
    def test_converts_to_si(self, text, expected):
        """Should scale by the unit prefix."""
        assert parse_quantity(text) == pytest.approx(expected)

    def test_numbers_pass_through(self):
        """Should accept plain ints and floats as SI."""
        assert parse_quantity(3) == 3.0
        assert parse_quantity(1e-3) == 1e-3

    def test_unit_is_case_insensitive(self):
        """Should read MOHM like mohm."""
        assert parse_quantity("2 MOHM") == pytest.approx(2e-3)

    def test_unknown_unit_raises_error(self):
        """Should name the unknown unit."""
        with pytest.raises(ValueError, match="unknown unit 'kW'"):
            parse_quantity("3 kW")

    @pytest.mark.parametrize("text", ["", "ohm", "1.2.3 V", "12 m ohm"])
    def test_malformed_string_raises_error(self, text):
        """Should reject strings that are not a number with an optional unit."""
        with pytest.raises(ValueError):
            parse_quantity(text)

    def test_boolean_rejected(self):
        """Should not treat True as 1."""
        with pytest.raises(ValueError):
            parse_quantity(True)


class TestParameterRanges:
    """Tests for ParameterRanges validation."""

    def test_defaults_are_test_grid_ranges(self):
        """Should hold the six drawn quantities."""
        ranges = ParameterRanges()

        assert ranges.intervals["I_l"] == (6.0, 14.0)
        assert set(ranges.intervals) == {"R_s", "L_s", "C", "I_l", "R", "L"}

    def test_inverted_interval_raises_error(self):
        """Should reject low > high and name the field."""
        intervals = dict(ParameterRanges().intervals, C=(3e-3, 2e-3))

        with pytest.raises(ConfigValidationError) as exc_info:
            ParameterRanges(intervals=intervals)

        assert exc_info.value.errors[0]["field"] == "C"
        assert exc_info.value.code == "CONFIG_VALIDATION_ERROR"

    def test_every_violation_is_reported(self):
        """Should collect all failing fields at once."""
        intervals = dict(ParameterRanges().intervals, R=(0.0, 1.0))
        del intervals["L"]

        with pytest.raises(ConfigValidationError) as exc_info:
            ParameterRanges(intervals=intervals)

        assert {error["field"] for error in exc_info.value.errors} == {"R", "L"}


class TestDrawParameters:
    """Tests for draw_parameters()."""

    def test_same_seed_same_parameters(self, ring10):
        """Should be fully determined by the seed."""
        first = draw_parameters(ParameterRanges(), ring10, rng=42)
        second = draw_parameters(ParameterRanges(), ring10, rng=42)

        np.testing.assert_array_equal(first.I_l, second.I_l)
        np.testing.assert_array_equal(first.R, second.R)

    def test_draws_inside_intervals(self, ring10):
        """Should keep every value in its interval."""
        params = draw_parameters(ParameterRanges(), ring10, rng=1)

        assert np.all((params.R_s >= 1e-3) & (params.R_s <= 2e-3))
        assert np.all((params.I_l >= 6.0) & (params.I_l <= 14.0))
        assert np.all((params.L >= 2e-6) & (params.L <= 3e-6))

    def test_defaults_for_coefficients_and_band(self, ring10):
        """Should use uniform pi_c, rigid loads and the 380 V band."""
        params = draw_parameters(ParameterRanges(), ring10, rng=1)

        np.testing.assert_allclose(params.pi_c, np.full(10, 0.1))
        np.testing.assert_array_equal(params.pi_u, np.zeros(10))
        np.testing.assert_array_equal(params.V_d, np.full(10, 380.0))

    def test_literal_values_keep_stream(self, ring10):
        """Should replace one quantity without shifting the others."""
        I_l = [10.0] * 10

        drawn = draw_parameters(ParameterRanges(), ring10, rng=5)
        fixed = draw_parameters(ParameterRanges(), ring10, rng=5, values={"I_l": I_l})

        np.testing.assert_array_equal(fixed.I_l, I_l)
        np.testing.assert_array_equal(fixed.R, drawn.R)
        np.testing.assert_array_equal(fixed.C, drawn.C)

    def test_literal_wrong_length_raises_error(self, ring10):
        """Should require one entry per line for line quantities."""
        with pytest.raises(ConfigValidationError) as exc_info:
            draw_parameters(ParameterRanges(), ring10, rng=5, values={"R": [0.075] * 9})

        assert exc_info.value.errors[0]["field"] == "parameters.values.R"

    def test_u_l_min_broadcast(self, ring3):
        """Should apply a scalar minimum load control to every prosumer."""
        params = draw_parameters(ParameterRanges(), ring3, rng=0, u_l_min=0.5)

        np.testing.assert_array_equal(params.u_l_min, np.full(3, 0.5))
