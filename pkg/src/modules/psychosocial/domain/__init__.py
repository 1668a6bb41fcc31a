"""Psychosocial domain layer."""

from src.modules.psychosocial.domain.errors import (
    PsychosocialError,
    FlexibilityParameterError,
    SurveyDataError,
)
from src.modules.psychosocial.domain.appliance import (
    ApplianceModel,
    ApplianceTable,
    ScaleStatistics,
    ValueProfile,
)
from src.modules.psychosocial.domain.flexibility import (
    CommunityFlexibility,
    FlexibilityEstimate,
    adoption_likelihood,
    community_flexibility,
    flexibility_level,
)
from src.modules.psychosocial.domain.comfort_tuning import (
    NON_ADOPTER_PI_U,
    PiUSpread,
    comfort_budget,
    tune_pi_u,
)
from src.modules.psychosocial.domain.survey import mu_round_trip, standardize, survey_transform

__all__ = [
    "PsychosocialError",
    "FlexibilityParameterError",
    "SurveyDataError",
    "ApplianceModel",
    "ApplianceTable",
    "ScaleStatistics",
    "ValueProfile",
    "CommunityFlexibility",
    "FlexibilityEstimate",
    "adoption_likelihood",
    "community_flexibility",
    "flexibility_level",
    "NON_ADOPTER_PI_U",
    "PiUSpread",
    "comfort_budget",
    "tune_pi_u",
    "mu_round_trip",
    "standardize",
    "survey_transform",
]
