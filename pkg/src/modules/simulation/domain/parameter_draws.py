"""Random electrical parameters drawn from configured intervals."""

from dataclasses import dataclass, field

import numpy as np

from src.modules.grid.domain.parameters import GridParameters, LineParams, ProsumerParams
from src.modules.grid.domain.topology import GridTopology
from src.modules.simulation.domain.errors import ConfigValidationError

PROSUMER_DRAWN = ("R_s", "L_s", "C", "I_l")
LINE_DRAWN = ("R", "L")


def _default_intervals() -> dict[str, tuple[float, float]]:
    return {
        "R_s": (1e-3, 2e-3),
        "L_s": (1.8e-3, 3e-3),
        "C": (1.7e-3, 2.5e-3),
        "I_l": (6.0, 14.0),
        "R": (50e-3, 100e-3),
        "L": (2e-6, 3e-6),
    }


@dataclass(frozen=True)
class ParameterRanges:
    """Closed SI intervals [low, high] for each drawn quantity; defaults are the test-grid ranges."""

    intervals: dict[str, tuple[float, float]] = field(default_factory=_default_intervals)

    def __post_init__(self) -> None:
        errors = []
        for name in PROSUMER_DRAWN + LINE_DRAWN:
            if name not in self.intervals:
                errors.append({"field": name, "reason": "interval missing"})
                continue
            low, high = self.intervals[name]
            if low > high:
                errors.append({"field": name, "reason": f"inverted interval [{low}, {high}]"})
            elif low <= 0.0:
                errors.append({"field": name, "reason": f"interval must be strictly positive, got [{low}, {high}]"})
        if errors:
            raise ConfigValidationError("Invalid parameter ranges", errors=errors)


def draw_parameters(
    ranges: ParameterRanges,
    topology: GridTopology,
    rng: np.random.Generator | int | None = None,
    pi_c: np.ndarray | None = None,
    pi_u: np.ndarray | None = None,
    V_d: float = 380.0,
    V_min: float = 379.3,
    V_max: float = 380.7,
    u_l_min: float | np.ndarray = 0.0,
    values: dict[str, list[float]] | None = None,
) -> GridParameters:
    """
    Independent uniform draws per prosumer and per line.

    Quantities are drawn in a fixed order (R_s, L_s, C, I_l, then R, L) so a
    seed fully determines the result. Entries of values replace the draw for
    that quantity after drawing, leaving the random stream unchanged.

    Args:
        ranges: Intervals of the drawn quantities
        topology: Grid whose n prosumers and m lines are parameterized
        rng: Generator or seed
        pi_c: Capacity coefficients (default uniform 1/n)
        pi_u: Comfort coefficients (default zero, i.e. rigid loads)
        V_d, V_min, V_max: Desired voltage and its band, shared by all prosumers
        u_l_min: Minimum load control, scalar or per prosumer
        values: Literal per-prosumer or per-line lists overriding draws

    Raises:
        ConfigValidationError: If a literal list has the wrong length
    """
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    n, m = topology.n, topology.m
    drawn: dict[str, np.ndarray] = {}
    for name in PROSUMER_DRAWN:
        low, high = ranges.intervals[name]
        drawn[name] = rng.uniform(low, high, size=n)
    for name in LINE_DRAWN:
        low, high = ranges.intervals[name]
        drawn[name] = rng.uniform(low, high, size=m)

    for name, literal in (values or {}).items():
        expected = n if name in PROSUMER_DRAWN else m
        if name not in drawn:
            raise ConfigValidationError(
                f"Unknown literal parameter '{name}'",
                errors=[{"field": f"parameters.values.{name}", "reason": "unknown parameter"}],
            )
        if len(literal) != expected:
            raise ConfigValidationError(
                f"Literal '{name}' needs {expected} entries",
                errors=[{"field": f"parameters.values.{name}", "reason": f"expected {expected} entries, got {len(literal)}"}],
            )
        drawn[name] = np.asarray(literal, dtype=float)

    pi_c = np.full(n, 1.0 / n) if pi_c is None else np.asarray(pi_c, dtype=float)
    pi_u = np.zeros(n) if pi_u is None else np.asarray(pi_u, dtype=float)
    u_l_min = np.broadcast_to(np.asarray(u_l_min, dtype=float), (n,))

    prosumers = [
        ProsumerParams(
            R_s=float(drawn["R_s"][i]),
            L_s=float(drawn["L_s"][i]),
            C=float(drawn["C"][i]),
            I_l=float(drawn["I_l"][i]),
            pi_c=float(pi_c[i]),
            pi_u=float(pi_u[i]),
            V_d=V_d,
            V_min=V_min,
            V_max=V_max,
            u_l_min=float(u_l_min[i]),
        )
        for i in range(n)
    ]
    lines = [LineParams(R=float(drawn["R"][k]), L=float(drawn["L"][k])) for k in range(m)]
    return GridParameters(prosumers, lines)
