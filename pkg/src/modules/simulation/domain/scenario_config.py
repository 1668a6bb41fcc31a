"""Scenario configuration models (validated from TOML documents)."""

from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, model_validator

from src.modules.controller.domain.state import ConstraintSettings, ControllerGains
from src.modules.grid.domain.topology import GridTopology
from src.modules.psychosocial.domain.appliance import ValueProfile
from src.modules.psychosocial.domain.comfort_tuning import PiUSpread
from src.modules.simulation.domain.parameter_draws import ParameterRanges
from src.modules.simulation.domain.units import parse_quantity
from src.modules.welfare.domain.weights import WelfareWeights


def _interval(value: Any) -> Any:
    """Accept a scalar quantity as the degenerate interval [a, a]."""
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"an interval needs exactly two bounds, got {len(value)}")
        low, high = (parse_quantity(v) for v in value)
    else:
        low = high = parse_quantity(value)
    if low > high:
        raise ValueError(f"inverted interval [{low:g}, {high:g}]")
    if low <= 0.0:
        raise ValueError(f"must be strictly positive, got [{low:g}, {high:g}]")
    return (low, high)


Quantity = Annotated[float, BeforeValidator(parse_quantity)]
PositiveQuantity = Annotated[float, BeforeValidator(parse_quantity), Field(gt=0.0)]
Interval = Annotated[tuple[float, float], BeforeValidator(_interval)]


class StrictModel(BaseModel):
    """Base for config sections: unknown keys are errors and instances are immutable."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class GridConfig(StrictModel):
    topology: Literal["ring", "edges"] = "ring"
    n: int = Field(default=10, ge=1)
    edges: list[tuple[int, int]] | None = None

    @model_validator(mode="after")
    def _check_edges(self) -> "GridConfig":
        if self.topology == "edges" and self.edges is None:
            raise ValueError("topology 'edges' requires an edges list")
        if self.topology == "ring" and self.edges is not None:
            raise ValueError("edges are only allowed with topology 'edges'")
        if self.topology == "ring" and self.n < 3:
            raise ValueError("a ring needs n >= 3")
        return self

    def build(self) -> GridTopology:
        if self.topology == "ring":
            return GridTopology.ring(self.n)
        return GridTopology.create(self.n, self.edges or [])


class ParameterRangesConfig(StrictModel):
    R_s: Interval = (1e-3, 2e-3)
    L_s: Interval = (1.8e-3, 3e-3)
    C: Interval = (1.7e-3, 2.5e-3)
    I_l: Interval = (6.0, 14.0)
    R: Interval = (50e-3, 100e-3)
    L: Interval = (2e-6, 3e-6)

    def to_domain(self) -> ParameterRanges:
        return ParameterRanges(intervals=self.model_dump())


class ParametersConfig(StrictModel):
    ranges: ParameterRangesConfig = Field(default_factory=ParameterRangesConfig)
    values: dict[Literal["R_s", "L_s", "C", "I_l", "R", "L"], list[PositiveQuantity]] = Field(default_factory=dict)
    pi_c: Literal["uniform"] | list[Annotated[float, Field(gt=0.0)]] = "uniform"
    V_d: Quantity = 380.0
    V_min: Quantity = 379.3
    V_max: Quantity = 380.7

    @model_validator(mode="after")
    def _check_band(self) -> "ParametersConfig":
        if not (self.V_min < self.V_d < self.V_max):
            raise ValueError(f"voltage band must satisfy V_min < V_d < V_max, got {self.V_min} < {self.V_d} < {self.V_max}")
        if isinstance(self.pi_c, list) and abs(sum(self.pi_c) - 1.0) > 1e-9:
            raise ValueError(f"pi_c must sum to 1, got {sum(self.pi_c):.12g}")
        return self


class WeightsConfig(StrictModel):
    alpha: float = Field(default=1e6, gt=0.0)
    beta: float = Field(default=1e-6, gt=0.0)
    gamma: float = Field(default=1.0, gt=0.0)

    def to_domain(self) -> WelfareWeights:
        return WelfareWeights(alpha=self.alpha, beta=self.beta, gamma=self.gamma)


class GainsConfig(StrictModel):
    tau_s: float = Field(default=1.0, gt=0.0)
    tau_l: float = Field(default=1.0, gt=0.0)
    tau_I: float = Field(default=1.0, gt=0.0)
    tau_V: float = Field(default=1.0, gt=0.0)
    tau_a: float = Field(default=1.0, gt=0.0)
    tau_b: float = Field(default=1.0, gt=0.0)
    tau_eta: float = Field(default=1.0, gt=0.0)


class FlexibilityConfig(StrictModel):
    """
    Where the acceptable flexibility level comes from.

    profile: estimated from value scores (community stv/sev, or per-prosumer profiles);
    ceiling: the technical ceiling psi itself; explicit: the given level.
    """

    source: Literal["profile", "ceiling", "explicit"] = "profile"
    psi: float = Field(default=0.5, ge=0.0, le=1.0)
    level: float | None = Field(default=None, ge=0.0, lt=1.0)
    stv: float = 0.0
    sev: float = 0.0
    profiles: list[tuple[float, float]] | None = None
    adopters: list[bool] | None = None
    u_l_min: float | None = Field(default=None, ge=0.0, lt=1.0)
    spread_cv: float = Field(default=1.23 / 3.22, ge=0.0)
    appliance_table: str | None = None

    @model_validator(mode="after")
    def _check_source(self) -> "FlexibilityConfig":
        if self.source == "explicit" and self.level is None:
            raise ValueError("source 'explicit' requires level")
        if self.source != "explicit" and self.level is not None:
            raise ValueError("level is only used with source 'explicit'")
        if self.profiles is not None and self.source != "profile":
            raise ValueError("profiles are only used with source 'profile'")
        return self

    @property
    def community_profile(self) -> ValueProfile:
        return ValueProfile(stv=self.stv, sev=self.sev)

    def prosumer_profiles(self) -> list[ValueProfile] | None:
        if self.profiles is None:
            return None
        return [ValueProfile(stv=stv, sev=sev) for stv, sev in self.profiles]

    def effective_u_l_min(self) -> float:
        """Minimum load control; defaults to 1 - psi."""
        return self.u_l_min if self.u_l_min is not None else 1.0 - self.psi

    def spread(self) -> PiUSpread:
        return PiUSpread(cv=self.spread_cv)


class ConstraintsConfig(StrictModel):
    load_box: bool = True
    voltage_band: bool = True

    def to_domain(self) -> ConstraintSettings:
        return ConstraintSettings(load_box=self.load_box, voltage_band=self.voltage_band)


class IntegrationConfig(StrictModel):
    method: Literal["implicit_euler", "rk4"] = "implicit_euler"
    step: Quantity = 1e5
    horizon: Quantity = 1e9
    tolerance: float = Field(default=1e-11, gt=0.0)
    window: int = Field(default=100, ge=1)
    record_every: int = Field(default=1, ge=1)
    divergence_threshold: float = Field(default=1e9, gt=0.0)
    initial: Literal["cold", "random", "equilibrium"] = "cold"
    initial_spread: float = Field(default=1.0, ge=0.0)
    polish: bool = True

    @model_validator(mode="after")
    def _check_times(self) -> "IntegrationConfig":
        if self.step <= 0.0:
            raise ValueError(f"step must be strictly positive, got {self.step}")
        if self.horizon < self.step:
            raise ValueError(f"horizon {self.horizon} is shorter than one step {self.step}")
        return self

    @property
    def max_steps(self) -> int:
        return int(round(self.horizon / self.step))


class OutputConfig(StrictModel):
    dir: str | None = None
    plot: bool = False


class ScenarioConfig(StrictModel):
    """Complete, immutable description of one closed-loop run."""

    name: str = "custom"
    seed: int = Field(default=0, ge=0)
    grid: GridConfig = Field(default_factory=GridConfig)
    parameters: ParametersConfig = Field(default_factory=ParametersConfig)
    weights: WeightsConfig = Field(default_factory=WeightsConfig)
    gains: GainsConfig = Field(default_factory=GainsConfig)
    flexibility: FlexibilityConfig = Field(default_factory=FlexibilityConfig)
    constraints: ConstraintsConfig = Field(default_factory=ConstraintsConfig)
    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _check_dimensions(self) -> "ScenarioConfig":
        n = self.grid.n
        m = n if self.grid.topology == "ring" else len(self.grid.edges or [])
        for name, literal in self.parameters.values.items():
            expected = m if name in ("R", "L") else n
            if len(literal) != expected:
                raise ValueError(f"parameters.values.{name} needs {expected} entries, got {len(literal)}")
        if isinstance(self.parameters.pi_c, list) and len(self.parameters.pi_c) != n:
            raise ValueError(f"parameters.pi_c needs {n} entries, got {len(self.parameters.pi_c)}")
        if self.flexibility.adopters is not None and len(self.flexibility.adopters) != n:
            raise ValueError(f"flexibility.adopters needs {n} entries, got {len(self.flexibility.adopters)}")
        if self.flexibility.profiles is not None and len(self.flexibility.profiles) != n:
            raise ValueError(f"flexibility.profiles needs {n} entries, got {len(self.flexibility.profiles)}")
        return self

    def controller_gains(self) -> ControllerGains:
        return ControllerGains(**self.gains.model_dump(), weights=self.weights.to_domain())
