"""Survey-scale transforms."""

import numpy as np

from src.modules.psychosocial.domain.appliance import ApplianceTable
from src.modules.psychosocial.domain.errors import SurveyDataError

SCALE_MIN = 1.0
SCALE_MAX = 5.0


def survey_transform(raw_score: float | np.ndarray) -> float | np.ndarray:
    """
    Map a 1-to-5 agreement score to a [0, 1] likelihood: (raw - 1) / 4.

    Raises:
        SurveyDataError: If any score is outside [1, 5]
    """
    scores = np.asarray(raw_score, dtype=float)
    if not np.all(np.isfinite(scores)) or np.any(scores < SCALE_MIN) or np.any(scores > SCALE_MAX):
        raise SurveyDataError(f"Survey scores must lie in [{SCALE_MIN:g}, {SCALE_MAX:g}]", field="raw_score")
    transformed = (scores - SCALE_MIN) / (SCALE_MAX - SCALE_MIN)
    return float(transformed) if transformed.ndim == 0 else transformed


def standardize(
    scores: np.ndarray | list[float],
    mean: float | None = None,
    sd: float | None = None,
) -> np.ndarray:
    """
    Standardize scores to (x - mean) / sd.

    Without mean and sd the population's own statistics are used, so the
    result has mean 0 and standard deviation 1.

    Raises:
        SurveyDataError: If sd is not strictly positive
    """
    values = np.atleast_1d(np.asarray(scores, dtype=float))
    center = float(values.mean()) if mean is None else float(mean)
    spread = float(values.std()) if sd is None else float(sd)
    if not np.isfinite(spread) or spread <= 0.0:
        raise SurveyDataError(f"Standard deviation must be positive, got {spread}", field="sd")
    return (values - center) / spread


def mu_round_trip(table: ApplianceTable) -> dict[str, float]:
    """Absolute gap between the transformed survey mean and mu, per appliance with a survey mean."""
    return {
        name: abs(survey_transform(mean) - table.get(name).mu)
        for name, mean in table.survey_means().items()
    }
