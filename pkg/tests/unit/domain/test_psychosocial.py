"""Unit tests for flexibility estimation, comfort tuning and survey transforms."""

import numpy as np
import pytest

from src.modules.psychosocial.domain.appliance import ApplianceModel, ApplianceTable, ValueProfile
from src.modules.psychosocial.domain.comfort_tuning import (
    NON_ADOPTER_PI_U,
    PiUSpread,
    comfort_budget,
    tune_pi_u,
)
from src.modules.psychosocial.domain.errors import FlexibilityParameterError, SurveyDataError
from src.modules.psychosocial.domain.flexibility import (
    adoption_likelihood,
    community_flexibility,
    flexibility_level,
)
from src.modules.psychosocial.domain.survey import mu_round_trip, standardize, survey_transform


class TestAdoptionLikelihood:
    """Tests for adoption_likelihood()."""

    def test_thermostat_baseline(self, appliance_table):
        """Should return mu for an average profile."""
        assert adoption_likelihood(appliance_table.get("thermostat"), ValueProfile()) == pytest.approx(0.624)

    def test_thermostat_high_self_transcendence(self, appliance_table):
        """Should give 0.624 + 2 * 0.071 - 0.039 = 0.727."""
        profile = ValueProfile(stv=2.0, sev=-1.0)

        assert adoption_likelihood(appliance_table.get("thermostat"), profile) == pytest.approx(0.727)

    def test_refrigerator_high_self_enhancement(self, appliance_table):
        """Should give 0.548 - 0.066 + 0.098 = 0.580."""
        profile = ValueProfile(stv=-1.0, sev=2.0)

        assert adoption_likelihood(appliance_table.get("refrigerator"), profile) == pytest.approx(0.580)

    def test_clamped_to_unit_interval(self, appliance_table):
        """Should clamp extreme profiles to [0, 1]."""
        thermostat = appliance_table.get("thermostat")

        assert adoption_likelihood(thermostat, ValueProfile(stv=50.0, sev=50.0)) == 1.0
        assert adoption_likelihood(thermostat, ValueProfile(stv=-50.0, sev=-50.0)) == 0.0

    def test_monotone_in_both_scores(self, appliance_table):
        """Should increase with STV and with SEV for every appliance."""
        for model in appliance_table.models:
            base = adoption_likelihood(model, ValueProfile())
            assert adoption_likelihood(model, ValueProfile(stv=0.5)) > base
            assert adoption_likelihood(model, ValueProfile(sev=0.5)) > base


class TestFlexibilityLevel:
    """Tests for flexibility_level() and community_flexibility()."""

    @pytest.mark.parametrize(
        ("stv", "sev", "expected"),
        [(0.0, 0.0, 0.30798), (2.0, -1.0, 0.35917), (-1.0, 2.0, 0.31183)],
    )
    def test_reference_profiles(self, appliance_table, stv, sev, expected):
        """Should reproduce the community flexibility levels with psi = 0.5."""
        estimate = flexibility_level(appliance_table.models, ValueProfile(stv=stv, sev=sev), 0.5)

        assert estimate.lambda_ == pytest.approx(expected, abs=1e-5)
        assert estimate.lambda_ <= estimate.psi

    def test_zero_ceiling_gives_no_flexibility(self, appliance_table):
        """Should be zero for psi = 0 whatever the profile."""
        estimate = flexibility_level(appliance_table.models, ValueProfile(stv=3.0, sev=3.0), 0.0)

        assert estimate.lambda_ == 0.0

    def test_monotone_in_psi(self, appliance_table):
        """Should grow with the technical ceiling."""
        levels = [flexibility_level(appliance_table.models, ValueProfile(), psi).lambda_ for psi in (0.2, 0.5, 0.9)]

        assert levels == sorted(levels)

    def test_weight_sum_violation_raises_error(self):
        """Should reject consumption weights not summing to one."""
        models = [ApplianceModel("a", 0.5, 0.1, 0.1, 0.6), ApplianceModel("b", 0.5, 0.1, 0.1, 0.3)]

        with pytest.raises(FlexibilityParameterError) as exc_info:
            flexibility_level(models, ValueProfile(), 0.5)

        assert exc_info.value.details["field"] == "omega"

    def test_psi_outside_unit_interval_raises_error(self, appliance_table):
        """Should reject psi > 1."""
        with pytest.raises(FlexibilityParameterError) as exc_info:
            flexibility_level(appliance_table.models, ValueProfile(), 1.5)

        assert exc_info.value.code == "FLEXIBILITY_PARAMETER_ERROR"

    def test_community_level_is_demand_weighted(self, appliance_table):
        """Should weight individual levels by load demand."""
        profiles = [ValueProfile(), ValueProfile(stv=2.0, sev=-1.0)]
        I_l = np.array([10.0, 30.0])

        community = community_flexibility(appliance_table.models, profiles, I_l, 0.5)

        np.testing.assert_allclose(community.per_prosumer, [0.30798, 0.35917], atol=1e-5)
        assert community.community == pytest.approx((10 * 0.30798 + 30 * 0.35917) / 40, abs=1e-5)
        np.testing.assert_allclose(community.comfort_shares(I_l), I_l * community.per_prosumer)

    def test_community_profile_count_mismatch_raises_error(self, appliance_table):
        """Should require one profile per prosumer."""
        with pytest.raises(FlexibilityParameterError):
            community_flexibility(appliance_table.models, [ValueProfile()], np.ones(3), 0.5)


class TestTunePiU:
    """Tests for tune_pi_u()."""

    def test_half_flexibility_budget(self):
        """Should distribute a total of 1 for Lambda = 0.5."""
        assert tune_pi_u(0.5, 10, seed=1).sum() == pytest.approx(1.0, abs=1e-12)

    def test_zero_level_keeps_floor(self):
        """Should leave every entry at the non-adopter floor for Lambda = 0."""
        np.testing.assert_array_equal(tune_pi_u(0.0, 10, seed=1), np.full(10, NON_ADOPTER_PI_U))

    def test_community_level_sum(self):
        """Should sum to 1 / (1 - Lambda) - 1 for ten adopters."""
        pi_u = tune_pi_u(0.30798, 10, seed=42)

        assert pi_u.sum() == pytest.approx(1.0 / 0.69202 - 1.0, abs=1e-12)
        assert pi_u.sum() == pytest.approx(0.44504, abs=1e-5)
        assert np.all(pi_u > 0.0)

    def test_reproducible_per_seed(self):
        """Should give identical vectors for identical seeds."""
        np.testing.assert_array_equal(tune_pi_u(0.3, 10, seed=42), tune_pi_u(0.3, 10, seed=42))
        assert not np.array_equal(tune_pi_u(0.3, 10, seed=42), tune_pi_u(0.3, 10, seed=43))

    def test_non_adopters_get_floor(self):
        """Should give non-adopters the floor and keep the total."""
        adopters = np.array([True, False, True, False])

        pi_u = tune_pi_u(0.4, 4, adopters=adopters, seed=3)

        np.testing.assert_array_equal(pi_u[~adopters], [NON_ADOPTER_PI_U, NON_ADOPTER_PI_U])
        assert pi_u.sum() == pytest.approx(comfort_budget(0.4), abs=1e-12)

    def test_explicit_shares(self):
        """Should split the budget in proportion to given shares."""
        pi_u = tune_pi_u(0.5, 2, shares=np.array([1.0, 3.0]))

        np.testing.assert_allclose(pi_u, [0.25, 0.75])

    def test_zero_spread_is_uniform(self):
        """Should give equal entries for a zero coefficient of variation."""
        np.testing.assert_allclose(tune_pi_u(0.5, 4, spread=PiUSpread(cv=0.0), seed=0), np.full(4, 0.25))

    def test_full_flexibility_raises_error(self):
        """Should reject Lambda >= 1."""
        with pytest.raises(FlexibilityParameterError) as exc_info:
            tune_pi_u(1.0, 10, seed=0)

        assert exc_info.value.details["field"] == "lambda"

    def test_no_adopters_raises_error(self):
        """Should need at least one adopter for a positive level."""
        with pytest.raises(FlexibilityParameterError):
            tune_pi_u(0.3, 3, adopters=np.zeros(3, dtype=bool), seed=0)


class TestSurveyTransforms:
    """Tests for survey_transform(), standardize() and mu_round_trip()."""

    def test_thermostat_mean(self):
        """Should map 3.50 to 0.625."""
        assert survey_transform(3.50) == pytest.approx(0.625)

    def test_scale_minimum(self):
        """Should map 1 to 0."""
        assert survey_transform(1.0) == 0.0

    def test_refrigerator_mean(self):
        """Should map 3.19 to 0.5475."""
        assert survey_transform(3.19) == pytest.approx(0.5475)

    def test_out_of_range_raises_error(self):
        """Should reject scores outside [1, 5]."""
        with pytest.raises(SurveyDataError) as exc_info:
            survey_transform(5.5)

        assert exc_info.value.code == "SURVEY_DATA_ERROR"

    def test_round_trip_within_tolerance(self, appliance_table):
        """Should reproduce every mu from its survey mean within 0.002."""
        gaps = mu_round_trip(appliance_table)

        assert set(gaps) == set(appliance_table.names)
        assert max(gaps.values()) < 0.002

    def test_standardize_population_mean(self):
        """Should map the STV population mean to 0."""
        np.testing.assert_allclose(standardize([4.80], 4.80, 1.36), [0.0])

    def test_standardize_one_sd_above(self):
        """Should map SEV 4.45 to one standard deviation above the mean."""
        np.testing.assert_allclose(standardize([4.45], 3.22, 1.23), [1.0])

    def test_standardize_own_population(self, rng):
        """Should give mean 0 and sd 1 without explicit statistics."""
        scores = standardize(rng.uniform(1, 7, 50))

        assert scores.mean() == pytest.approx(0.0, abs=1e-12)
        assert scores.std() == pytest.approx(1.0)

    def test_standardize_constant_vector_raises_error(self):
        """Should reject a zero standard deviation."""
        with pytest.raises(SurveyDataError) as exc_info:
            standardize([3.0, 3.0, 3.0])

        assert exc_info.value.details["field"] == "sd"


class TestApplianceTable:
    """Tests for ApplianceTable invariants."""

    def test_shipped_table(self, appliance_table):
        """Should hold six appliances and the value-scale statistics."""
        assert len(appliance_table.models) == 6
        assert appliance_table.stv.mean == 4.80
        assert appliance_table.sev.sd == 1.23

    def test_duplicate_names_raise_error(self):
        """Should reject repeated appliance names."""
        model = ApplianceModel("heater", 0.5, 0.1, 0.1, 0.5)

        with pytest.raises(FlexibilityParameterError):
            ApplianceTable(models=(model, model))

    def test_unknown_appliance_raises_error(self, appliance_table):
        """Should reject lookups of missing names."""
        with pytest.raises(FlexibilityParameterError):
            appliance_table.get("toaster")

    def test_mu_outside_unit_interval_raises_error(self):
        """Should reject mu > 1."""
        with pytest.raises(FlexibilityParameterError) as exc_info:
            ApplianceModel("heater", 1.2, 0.1, 0.1, 1.0)

        assert exc_info.value.details["field"] == "mu"
