"""Welfare domain layer."""

from src.modules.welfare.domain.errors import (
    WelfareError,
    WelfareParameterError,
    DegenerateProblemError,
    InfeasibleProblemError,
)
from src.modules.welfare.domain.weights import WelfareWeights
from src.modules.welfare.domain.welfare_functions import (
    DecisionPoint,
    cost,
    objective_value,
    utility,
    welfare,
)
from src.modules.welfare.domain.ideal_optimum import (
    IdealWelfareSolution,
    ideal_welfare_optimum,
    predicted_reduction,
)
from src.modules.welfare.domain.quadratic_program import (
    QpSolution,
    QuadraticProgram,
    brute_force_qp_oracle,
    full_welfare_qp,
    ideal_solution_from_qp,
    ideal_welfare_qp,
)

__all__ = [
    "WelfareError",
    "WelfareParameterError",
    "DegenerateProblemError",
    "InfeasibleProblemError",
    "WelfareWeights",
    "DecisionPoint",
    "cost",
    "objective_value",
    "utility",
    "welfare",
    "IdealWelfareSolution",
    "ideal_welfare_optimum",
    "predicted_reduction",
    "QpSolution",
    "QuadraticProgram",
    "brute_force_qp_oracle",
    "full_welfare_qp",
    "ideal_solution_from_qp",
    "ideal_welfare_qp",
]
