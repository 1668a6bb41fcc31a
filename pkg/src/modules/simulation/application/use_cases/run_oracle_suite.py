"""Run oracle suite use case."""

from collections.abc import Callable

import numpy as np

from src.modules.controller.domain.optimality import controller_state_from_qp, kkt_residual, loss_penalty_identity
from src.modules.controller.domain.state import ConstraintSettings
from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.plant import steady_state
from src.modules.grid.domain.state import GridInput
from src.modules.grid.domain.topology import GridTopology
from src.modules.psychosocial.application.ports.appliance_table_source import ApplianceTableSource
from src.modules.psychosocial.domain.appliance import ApplianceTable, ValueProfile
from src.modules.psychosocial.domain.comfort_tuning import comfort_budget, tune_pi_u
from src.modules.psychosocial.domain.flexibility import flexibility_level
from src.modules.psychosocial.domain.survey import mu_round_trip
from src.modules.simulation.application.dtos import OracleCheck, OracleReport, OracleSuiteRequest
from src.modules.simulation.domain.parameter_draws import ParameterRanges, draw_parameters
from src.modules.welfare.domain.ideal_optimum import IdealWelfareSolution, ideal_welfare_optimum, predicted_reduction
from src.modules.welfare.domain.quadratic_program import (
    brute_force_qp_oracle,
    full_welfare_qp,
    ideal_solution_from_qp,
    ideal_welfare_qp,
)
from src.modules.welfare.domain.weights import WelfareWeights
from src.shared.domain.errors import DomainError
from src.shared.utils.logger import Logger

ClosedFormSolver = Callable[[np.ndarray, np.ndarray, np.ndarray], IdealWelfareSolution]

CLOSED_FORM_TOLERANCE = 1e-8
LAMBDA_TOLERANCE = 1e-5
IDENTITY_TOLERANCE = 1e-12
ROUND_TRIP_TOLERANCE = 0.002
KKT_TOLERANCE = 1e-9
LOSS_TOLERANCE = 1e-8
PSI = 0.5

# (STV, SEV) -> reference flexibility level at psi = 0.5
REFERENCE_LEVELS = {
    (0.0, 0.0): 0.30798,
    (2.0, -1.0): 0.35917,
    (-1.0, 2.0): 0.31183,
}
REFERENCE_WEIGHTED_MU = 0.61596


def _relative_gap(value: np.ndarray, reference: np.ndarray) -> float:
    value = np.atleast_1d(np.asarray(value, dtype=float))
    reference = np.atleast_1d(np.asarray(reference, dtype=float))
    scale = max(float(np.max(np.abs(reference))), np.finfo(float).tiny)
    return float(np.max(np.abs(value - reference))) / scale


class RunOracleSuiteUseCase:
    """
    Use case for the independent verification oracles.

    Closed-form results are compared with brute-force or reference values:
    1. Ideal optimum formula vs. brute-force QP on random instances
    2. Flexibility levels of the reference value profiles
    3. Comfort-sum identity of the tuned coefficients
    4. Survey transform round-trip of the appliance coefficients
    5. KKT residual of brute-force optima of the full welfare problem
    6. Loss identity at random plant steady states
    """

    def __init__(
        self,
        appliance_source: ApplianceTableSource,
        closed_form_solver: ClosedFormSolver = ideal_welfare_optimum,
    ) -> None:
        """
        Initialize use case with dependencies.

        Args:
            appliance_source: Source of appliance coefficients
            closed_form_solver: Closed-form ideal optimum under test
        """
        self._appliance_source = appliance_source
        self._closed_form_solver = closed_form_solver
        self._logger = Logger("USE_CASE:ORACLE_SUITE")

    def execute(self, request: OracleSuiteRequest) -> OracleReport:
        """
        Execute every oracle; failures are collected, never raised.

        Args:
            request: Number of random instances and their base seed

        Returns:
            OracleReport with one entry per comparison
        """
        self._logger.info("Running oracle suite", extra={"instances": request.instances, "seed": request.seed})
        seeds = [request.seed + k for k in range(request.instances)]
        table = self._appliance_source.load()

        checks: list[OracleCheck] = []
        checks += [
            self._guard("closed_form_qp_equivalence", seed, CLOSED_FORM_TOLERANCE, self._closed_form_instance)
            for seed in seeds
        ]
        checks += self._flexibility_levels(table)
        checks += [self._guard("comfort_sum_identity", seed, IDENTITY_TOLERANCE, self._comfort_sum) for seed in seeds[:10]]
        checks.append(self._round_trip(table))
        checks += [self._guard("welfare_qp_kkt", seed, KKT_TOLERANCE, self._welfare_kkt) for seed in seeds[:10]]
        checks += [self._guard("loss_identity", seed, LOSS_TOLERANCE, self._loss_identity) for seed in seeds[:10]]

        report = OracleReport(checks=tuple(checks))
        if report.passed:
            self._logger.info("Oracle suite passed", extra={"checks": len(checks)})
        else:
            self._logger.error(
                "Oracle suite failed",
                extra={"failures": len(report.failures), "seeds": [c.seed for c in report.failures]},
            )
        return report

    # ==================== Checks ====================

    def _guard(
        self,
        name: str,
        seed: int,
        tolerance: float,
        check: Callable[[np.random.Generator], tuple[float, str]],
    ) -> OracleCheck:
        try:
            error, detail = check(np.random.default_rng(seed))
        except (DomainError, np.linalg.LinAlgError) as exc:
            return OracleCheck(name, seed, False, float("inf"), tolerance, f"{type(exc).__name__}: {exc}")
        return OracleCheck(name, seed, bool(error <= tolerance), error, tolerance, detail)

    def _closed_form_instance(self, rng: np.random.Generator) -> tuple[float, str]:
        n = int(rng.integers(1, 6))
        I_l = rng.uniform(6.0, 14.0, size=n)
        pi_c = rng.uniform(0.5, 1.5, size=n)
        pi_c /= pi_c.sum()
        pi_u = rng.uniform(0.05, 2.0, size=n)

        closed_form = self._closed_form_solver(I_l, pi_c, pi_u)
        brute = ideal_solution_from_qp(brute_force_qp_oracle(ideal_welfare_qp(I_l, pi_c, pi_u)), n)

        gaps = {
            "lambda_opt": _relative_gap(closed_form.lambda_opt, brute.lambda_opt),
            "I_s_opt": _relative_gap(closed_form.I_s_opt, brute.I_s_opt),
            "u_l_opt": _relative_gap(closed_form.u_l_opt, brute.u_l_opt),
        }
        worst = max(gaps, key=gaps.get)
        return gaps[worst], f"n={n} worst={worst}"

    def _flexibility_levels(self, table: ApplianceTable) -> list[OracleCheck]:
        checks = []
        base = flexibility_level(table.models, ValueProfile(), PSI)
        weighted_mu = base.lambda_ / PSI
        checks.append(OracleCheck(
            "weighted_mu_sum", None, abs(weighted_mu - REFERENCE_WEIGHTED_MU) <= LAMBDA_TOLERANCE,
            abs(weighted_mu - REFERENCE_WEIGHTED_MU), LAMBDA_TOLERANCE, f"value={weighted_mu:.6f}",
        ))
        for (stv, sev), expected in REFERENCE_LEVELS.items():
            level = flexibility_level(table.models, ValueProfile(stv=stv, sev=sev), PSI).lambda_
            error = abs(level - expected)
            checks.append(OracleCheck(
                "flexibility_level", None, error <= LAMBDA_TOLERANCE, error, LAMBDA_TOLERANCE,
                f"stv={stv:g} sev={sev:g} value={level:.6f}",
            ))
        return checks

    @staticmethod
    def _comfort_sum(rng: np.random.Generator) -> tuple[float, str]:
        n = int(rng.integers(2, 21))
        level = float(rng.uniform(0.05, 0.6))
        I_l = rng.uniform(6.0, 14.0, size=n)
        pi_u = tune_pi_u(level, n, seed=rng)

        sum_gap = abs(float(pi_u.sum()) - comfort_budget(level)) / comfort_budget(level)
        reduction_gap = abs(float(predicted_reduction(I_l, pi_u).sum()) / float(I_l.sum()) - level)
        return max(sum_gap, reduction_gap), f"n={n} level={level:.4f}"

    @staticmethod
    def _round_trip(table: ApplianceTable) -> OracleCheck:
        gaps = mu_round_trip(table)
        if not gaps:
            return OracleCheck("survey_round_trip", None, False, float("inf"), ROUND_TRIP_TOLERANCE, "no survey means")
        worst = max(gaps, key=gaps.get)
        return OracleCheck(
            "survey_round_trip", None, gaps[worst] <= ROUND_TRIP_TOLERANCE, gaps[worst], ROUND_TRIP_TOLERANCE,
            f"worst={worst}",
        )

    @staticmethod
    def _small_grid(rng: np.random.Generator) -> tuple[GridTopology, GridParameters]:
        n = int(rng.integers(3, 6))
        topology = GridTopology.ring(n)
        params = draw_parameters(
            ParameterRanges(),
            topology,
            rng,
            pi_u=rng.uniform(0.1, 1.0, size=n),
            u_l_min=0.5,
        )
        return topology, params

    def _welfare_kkt(self, rng: np.random.Generator) -> tuple[float, str]:
        topology, params = self._small_grid(rng)
        weights = WelfareWeights(alpha=1.0, beta=1.0, gamma=1.0)
        solution = brute_force_qp_oracle(full_welfare_qp(params, topology, weights))
        cstate = controller_state_from_qp(solution, topology.n)
        residual = kkt_residual(cstate, params, weights, topology, constraints=ConstraintSettings.unconstrained())
        return residual.relative, f"n={topology.n} worst={residual.worst()}"

    def _loss_identity(self, rng: np.random.Generator) -> tuple[float, str]:
        topology, params = self._small_grid(rng)
        grid_input = GridInput(
            u_s=params.V_d + rng.uniform(-1.0, 1.0, size=topology.n),
            u_l=rng.uniform(0.5, 1.0, size=topology.n),
        )
        state = steady_state(grid_input, params, topology)
        report = loss_penalty_identity(state, grid_input, params, topology)
        if not report.precondition_met:
            return float("inf"), f"steady residual {report.steady_residual:.3e}"
        return report.relative_gap, f"n={topology.n}"
