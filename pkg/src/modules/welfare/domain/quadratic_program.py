"""Small dense convex quadratic programs and a brute-force reference solver."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from src.modules.grid.domain.parameters import GridParameters
from src.modules.grid.domain.topology import GridTopology
from src.modules.welfare.domain.errors import InfeasibleProblemError, WelfareParameterError
from src.modules.welfare.domain.ideal_optimum import IdealWelfareSolution
from src.modules.welfare.domain.weights import WelfareWeights

MAX_BOXED_VARIABLES = 12

# Activity of a boxed variable within one enumeration pattern
_FREE, _AT_LOWER, _AT_UPPER = 0, 1, 2


@dataclass(frozen=True)
class QuadraticProgram:
    """
    minimize 1/2 x^T H x + g^T x + constant
    subject to A x = b and lower <= x <= upper.

    H must be symmetric positive definite. Infinite bounds mean no bound.
    """

    H: np.ndarray
    g: np.ndarray
    A: np.ndarray
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    constant: float = 0.0
    labels: tuple[str, ...] = field(default=())

    @classmethod
    def create(
        cls,
        H: np.ndarray,
        g: np.ndarray,
        A: np.ndarray | None = None,
        b: np.ndarray | None = None,
        lower: np.ndarray | None = None,
        upper: np.ndarray | None = None,
        constant: float = 0.0,
        labels: tuple[str, ...] = (),
    ) -> "QuadraticProgram":
        """
        Build a program, filling absent constraints with empty or infinite defaults.

        Raises:
            WelfareParameterError: If shapes disagree or H is not positive definite
        """
        H = np.asarray(H, dtype=float)
        g = np.asarray(g, dtype=float)
        size = g.size
        if H.shape != (size, size):
            raise WelfareParameterError(f"H must be {size}x{size}, got {H.shape}", field="H")
        if not np.allclose(H, H.T):
            raise WelfareParameterError("H must be symmetric", field="H")
        try:
            np.linalg.cholesky(H)
        except np.linalg.LinAlgError as exc:
            raise WelfareParameterError("H must be positive definite", field="H") from exc

        A = np.zeros((0, size)) if A is None else np.atleast_2d(np.asarray(A, dtype=float))
        b = np.zeros(A.shape[0]) if b is None else np.atleast_1d(np.asarray(b, dtype=float))
        if A.shape[1] != size or b.shape != (A.shape[0],):
            raise WelfareParameterError(f"A, b shapes {A.shape}, {b.shape} do not fit {size} variables", field="A")

        lower = np.full(size, -np.inf) if lower is None else np.asarray(lower, dtype=float)
        upper = np.full(size, np.inf) if upper is None else np.asarray(upper, dtype=float)
        if lower.shape != (size,) or upper.shape != (size,) or np.any(lower > upper):
            raise WelfareParameterError("Bounds must be vectors with lower <= upper", field="bounds")

        return cls(H=H, g=g, A=A, b=b, lower=lower, upper=upper, constant=float(constant), labels=labels)

    @property
    def size(self) -> int:
        return self.g.size

    def objective(self, x: np.ndarray) -> float:
        return float(0.5 * x @ self.H @ x + self.g @ x + self.constant)

    def boxed_indices(self) -> np.ndarray:
        return np.flatnonzero(np.isfinite(self.lower) | np.isfinite(self.upper))


@dataclass(frozen=True)
class QpSolution:
    """
    Optimal point of a QuadraticProgram with its multipliers.

    multipliers: one per equality row (Lagrangian f + y^T (A x - b)).
    lower_multipliers, upper_multipliers: non-negative box multipliers.
    """

    x: np.ndarray
    multipliers: np.ndarray
    lower_multipliers: np.ndarray
    upper_multipliers: np.ndarray
    objective: float
    patterns_tried: int

    @property
    def active_lower(self) -> np.ndarray:
        return self.lower_multipliers > 0.0

    @property
    def active_upper(self) -> np.ndarray:
        return self.upper_multipliers > 0.0

    def complementarity(self, problem: QuadraticProgram) -> float:
        """max_i |z_i * slack_i| over finite bounds."""
        gaps = [0.0]
        finite_lower = np.isfinite(problem.lower)
        finite_upper = np.isfinite(problem.upper)
        if np.any(finite_lower):
            gaps.append(float(np.max(np.abs(self.lower_multipliers[finite_lower] * (self.x - problem.lower)[finite_lower]))))
        if np.any(finite_upper):
            gaps.append(float(np.max(np.abs(self.upper_multipliers[finite_upper] * (problem.upper - self.x)[finite_upper]))))
        return max(gaps)


def _solve_pattern(
    problem: QuadraticProgram,
    fixed: np.ndarray,
    fixed_values: np.ndarray,
) -> tuple[np.ndarray, np.ndarray] | None:
    """Solve the equality-constrained KKT system with some variables pinned to bounds."""
    free = ~fixed
    x = np.zeros(problem.size)
    x[fixed] = fixed_values

    H_ff = problem.H[np.ix_(free, free)]
    A_f = problem.A[:, free]
    n_free = int(free.sum())
    n_eq = problem.A.shape[0]

    kkt = np.zeros((n_free + n_eq, n_free + n_eq))
    kkt[:n_free, :n_free] = H_ff
    kkt[:n_free, n_free:] = A_f.T
    kkt[n_free:, :n_free] = A_f
    rhs = np.concatenate([
        -problem.g[free] - problem.H[np.ix_(free, fixed)] @ x[fixed],
        problem.b - problem.A[:, fixed] @ x[fixed],
    ])

    if not rhs.size:
        return x, np.zeros(0)
    try:
        solution = np.linalg.solve(kkt, rhs)
    except np.linalg.LinAlgError:
        # Rank-deficient equality rows under this pattern
        solution, *_ = np.linalg.lstsq(kkt, rhs, rcond=None)
    scale = max(1.0, float(np.max(np.abs(rhs))), float(np.max(np.abs(kkt) @ np.abs(solution))))
    if float(np.max(np.abs(kkt @ solution - rhs))) > 1e-9 * scale:
        return None

    x[free] = solution[:n_free]
    return x, solution[n_free:]


def brute_force_qp_oracle(problem: QuadraticProgram, tolerance: float = 1e-9) -> QpSolution:
    """
    Solve a small strictly convex QP by direct KKT solves.

    Without finite bounds this is one linear solve. Otherwise every activity
    pattern (free, at lower, at upper) of the boxed variables is tried, at most
    3^k patterns, and the first pattern that is primal feasible and has
    non-negative bound multipliers is returned; strict convexity makes it unique.

    Raises:
        WelfareParameterError: If more than MAX_BOXED_VARIABLES variables are boxed
        InfeasibleProblemError: If no pattern satisfies the KKT conditions
    """
    boxed = problem.boxed_indices()
    if boxed.size > MAX_BOXED_VARIABLES:
        raise WelfareParameterError(
            f"Brute-force enumeration supports at most {MAX_BOXED_VARIABLES} boxed variables, got {boxed.size}",
            field="bounds",
        )

    choices = []
    for index in boxed:
        options = [_FREE]
        if np.isfinite(problem.lower[index]):
            options.append(_AT_LOWER)
        if np.isfinite(problem.upper[index]):
            options.append(_AT_UPPER)
        choices.append(options)

    tried = 0
    for pattern in itertools.product(*choices):
        tried += 1
        fixed = np.zeros(problem.size, dtype=bool)
        fixed_values = []
        for index, state in zip(boxed, pattern):
            if state == _AT_LOWER:
                fixed[index] = True
                fixed_values.append((index, problem.lower[index]))
            elif state == _AT_UPPER:
                fixed[index] = True
                fixed_values.append((index, problem.upper[index]))
        values = np.array([v for _, v in sorted(fixed_values)])

        result = _solve_pattern(problem, fixed, values)
        if result is None:
            continue
        x, y = result

        scale = max(1.0, float(np.max(np.abs(x))))
        if np.any(x < problem.lower - tolerance * scale) or np.any(x > problem.upper + tolerance * scale):
            continue

        gradient = problem.H @ x + problem.g + problem.A.T @ y
        grad_scale = max(1.0, float(np.max(np.abs(gradient))), float(np.max(np.abs(problem.g))) if problem.size else 1.0)
        lower_multipliers = np.zeros(problem.size)
        upper_multipliers = np.zeros(problem.size)
        for index, state in zip(boxed, pattern):
            if state == _AT_LOWER:
                lower_multipliers[index] = gradient[index]
            elif state == _AT_UPPER:
                upper_multipliers[index] = -gradient[index]
        if np.any(lower_multipliers < -tolerance * grad_scale) or np.any(upper_multipliers < -tolerance * grad_scale):
            continue

        return QpSolution(
            x=x,
            multipliers=y,
            lower_multipliers=np.maximum(lower_multipliers, 0.0),
            upper_multipliers=np.maximum(upper_multipliers, 0.0),
            objective=problem.objective(x),
            patterns_tried=tried,
        )

    raise InfeasibleProblemError(tried)


def _require_flexible(pi_u: np.ndarray) -> None:
    if np.any(pi_u <= 0.0):
        raise WelfareParameterError("Quadratic program form needs pi_u > 0 for every prosumer", field="pi_u")


def ideal_welfare_qp(I_l: np.ndarray, pi_c: np.ndarray, pi_u: np.ndarray) -> QuadraticProgram:
    """
    Ideal welfare problem as a QP over x = [I_s, u_l].

        minimize  sum I_s^2/(2 pi_c) + sum I_l^2 (1 - u_l)^2 / (2 pi_u)
        subject to 1^T I_s = I_l^T u_l
    """
    I_l = np.asarray(I_l, dtype=float)
    pi_c = np.asarray(pi_c, dtype=float)
    pi_u = np.asarray(pi_u, dtype=float)
    _require_flexible(pi_u)
    n = I_l.size

    comfort = I_l**2 / pi_u
    return QuadraticProgram.create(
        H=np.diag(np.concatenate([1.0 / pi_c, comfort])),
        g=np.concatenate([np.zeros(n), -comfort]),
        A=np.concatenate([np.ones(n), -I_l])[None, :],
        b=np.zeros(1),
        constant=float(np.sum(comfort) / 2.0),
        labels=tuple(f"I_s_{i}" for i in range(n)) + tuple(f"u_l_{i}" for i in range(n)),
    )


def ideal_solution_from_qp(solution: QpSolution, n: int) -> IdealWelfareSolution:
    """Read lambda_opt, I_s_opt and u_l_opt off an ideal_welfare_qp solution."""
    return IdealWelfareSolution(
        lambda_opt=float(-solution.multipliers[0]),
        I_s_opt=solution.x[:n].copy(),
        u_l_opt=solution.x[n:2 * n].copy(),
    )


def full_welfare_qp(
    params: GridParameters,
    topology: GridTopology,
    weights: WelfareWeights,
    nu_s: np.ndarray | None = None,
    nu_l: np.ndarray | None = None,
    load_box: bool = False,
    voltage_band: bool = False,
) -> QuadraticProgram:
    """
    Psycho-social-physical welfare problem over x = [u_s, u_l, I_s, V].

        minimize  -alpha W(u_l, I_s) + beta/2 |u_s|^2 + gamma/2 |V - V_d|^2 - nu^T u
        subject to u_s = R_s I_s + V
                   I_s = I_l u_l + L V

    The equality multipliers are lambda_a and lambda_b. Port terms nu are the
    penalty that appears once the controller is attached to the grid.
    """
    params.check_matches(topology.n, topology.m)
    _require_flexible(params.pi_u)
    n = topology.n
    nu_s = np.zeros(n) if nu_s is None else np.asarray(nu_s, dtype=float)
    nu_l = np.zeros(n) if nu_l is None else np.asarray(nu_l, dtype=float)
    laplacian = topology.weighted_laplacian(params.R)
    comfort = weights.alpha * params.I_l**2 / params.pi_u
    eye = np.eye(n)
    zero = np.zeros((n, n))

    H = np.diag(np.concatenate([
        np.full(n, weights.beta),
        comfort,
        weights.alpha / params.pi_c,
        np.full(n, weights.gamma),
    ]))
    g = np.concatenate([-nu_s, -comfort - nu_l, np.zeros(n), -weights.gamma * params.V_d])
    A = np.block([
        [eye, zero, -np.diag(params.R_s), -eye],
        [zero, -np.diag(params.I_l), eye, -laplacian],
    ])

    lower = np.full(4 * n, -np.inf)
    upper = np.full(4 * n, np.inf)
    if load_box:
        lower[n:2 * n] = params.u_l_min
        upper[n:2 * n] = 1.0
    if voltage_band:
        lower[3 * n:] = params.V_min
        upper[3 * n:] = params.V_max

    return QuadraticProgram.create(
        H=H,
        g=g,
        A=A,
        b=np.zeros(2 * n),
        lower=lower,
        upper=upper,
        constant=float(np.sum(comfort) / 2.0 + weights.gamma * np.dot(params.V_d, params.V_d) / 2.0),
        labels=tuple(f"{name}_{i}" for name in ("u_s", "u_l", "I_s", "V") for i in range(n)),
    )
