"""Recorded closed-loop trajectories and run certificates."""

from dataclasses import dataclass, field

import numpy as np

from src.modules.grid.domain.state import GridState
from src.modules.simulation.domain.closed_loop import StateLayout


@dataclass(frozen=True)
class TraceEvent:
    """Something that happened during integration (projection change, convergence, divergence)."""

    time: float
    step: int
    kind: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"time": self.time, "step": self.step, "kind": self.kind, **self.detail}


class TraceRecorder:
    """Accumulates samples during integration and freezes them into a SimTrace."""

    def __init__(self, layout: StateLayout) -> None:
        self._layout = layout
        self._times: list[float] = []
        self._states: list[np.ndarray] = []
        self._storage: list[tuple[float, float]] = []
        self._kkt: list[float] = []
        self._events: list[TraceEvent] = []

    def record(self, time: float, z: np.ndarray, storage: float, controller_storage: float, kkt: float) -> None:
        self._times.append(time)
        self._states.append(np.array(z, copy=True))
        self._storage.append((storage, controller_storage))
        self._kkt.append(kkt)

    def event(self, event: TraceEvent) -> None:
        self._events.append(event)

    @property
    def last_time(self) -> float | None:
        return self._times[-1] if self._times else None

    def freeze(self) -> "SimTrace":
        size = self._layout.size
        states = np.array(self._states) if self._states else np.zeros((0, size))
        storage = np.array(self._storage) if self._storage else np.zeros((0, 2))
        return SimTrace(
            layout=self._layout,
            times=np.array(self._times),
            states=states,
            storage=storage[:, 0],
            controller_storage=storage[:, 1],
            kkt_residual=np.array(self._kkt),
            events=tuple(self._events),
        )


@dataclass(frozen=True)
class SimTrace:
    """
    Time-indexed closed-loop samples.

    states holds one stacked closed-loop vector per row (see StateLayout);
    storage, controller_storage and kkt_residual hold one value per row.
    """

    layout: StateLayout
    times: np.ndarray
    states: np.ndarray
    storage: np.ndarray
    controller_storage: np.ndarray
    kkt_residual: np.ndarray
    events: tuple[TraceEvent, ...] = ()

    @property
    def sample_count(self) -> int:
        return int(self.times.size)

    @property
    def is_empty(self) -> bool:
        return self.sample_count == 0

    @property
    def closed_loop_storage(self) -> np.ndarray:
        return self.storage + self.controller_storage

    def block(self, name: str) -> np.ndarray:
        """Samples of one state block, shape (samples, block length)."""
        return self.states[:, self.layout.block(name)]

    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def final_grid_state(self) -> GridState:
        return GridState.from_vector(self.states[-1, :self.layout.grid_size], self.layout.n, self.layout.m)

    def events_of(self, kind: str) -> list[TraceEvent]:
        return [event for event in self.events if event.kind == kind]

    def columns(self) -> dict[str, np.ndarray]:
        """
        Named columns in export order:
        t, V_1..V_n, Is_1..Is_n, ul_1..ul_n, I_1..I_m, S, S_c, S_cl, kkt_residual.
        """
        n, m = self.layout.n, self.layout.m
        columns: dict[str, np.ndarray] = {"t": self.times}
        V, I_s, u_l, I = self.block("V"), self.block("I_s"), self.block("u_l"), self.block("I")
        for i in range(n):
            columns[f"V_{i + 1}"] = V[:, i]
        for i in range(n):
            columns[f"Is_{i + 1}"] = I_s[:, i]
        for i in range(n):
            columns[f"ul_{i + 1}"] = u_l[:, i]
        for k in range(m):
            columns[f"I_{k + 1}"] = I[:, k]
        columns["S"] = self.storage
        columns["S_c"] = self.controller_storage
        columns["S_cl"] = self.closed_loop_storage
        columns["kkt_residual"] = self.kkt_residual
        return columns


@dataclass(frozen=True)
class RunCertificate:
    """
    Steady-state quantities and stability diagnostics of one run.

    converged implies the final rate met the tolerance for the whole window.
    Residuals are given absolute and relative to the size of their terms.
    """

    scenario: str
    converged: bool
    convergence_time: float | None
    steps: int
    polished: bool
    steady_state: GridState
    u_l: np.ndarray
    kkt_residual: float
    kkt_relative: float
    plant_residual: float
    plant_relative: float
    max_rate_ratio: float
    voltage_band_ok: bool
    min_voltage: float
    max_voltage: float
    average_voltage: float
    voltage_identity_gap: float
    total_demand: float
    consumption_reduction: float
    reduction_percent: float
    benchmark_reduction_percent: float
    flexibility_level: float
    sharing_spread: float
    loss_identity_gap: float
    lyapunov_violations: int
    dissipation_margin: float
    active_constraints: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "converged": self.converged,
            "convergence_time": self.convergence_time,
            "steps": self.steps,
            "polished": self.polished,
            "V": self.steady_state.V.tolist(),
            "I_s": self.steady_state.I_s.tolist(),
            "u_l": self.u_l.tolist(),
            "kkt_residual": self.kkt_residual,
            "kkt_relative": self.kkt_relative,
            "plant_residual": self.plant_residual,
            "plant_relative": self.plant_relative,
            "max_rate_ratio": self.max_rate_ratio,
            "voltage_band_ok": self.voltage_band_ok,
            "min_voltage": self.min_voltage,
            "max_voltage": self.max_voltage,
            "average_voltage": self.average_voltage,
            "voltage_identity_gap": self.voltage_identity_gap,
            "total_demand": self.total_demand,
            "consumption_reduction": self.consumption_reduction,
            "reduction_percent": self.reduction_percent,
            "benchmark_reduction_percent": self.benchmark_reduction_percent,
            "flexibility_level": self.flexibility_level,
            "sharing_spread": self.sharing_spread,
            "loss_identity_gap": self.loss_identity_gap,
            "lyapunov_violations": self.lyapunov_violations,
            "dissipation_margin": self.dissipation_margin,
            "active_constraints": self.active_constraints,
        }

    def summary_lines(self) -> list[str]:
        """Human-readable certificate."""
        time = f"{self.convergence_time:.6g}" if self.convergence_time is not None else "not reached"
        return [
            f"scenario                  {self.scenario}",
            f"converged                 {self.converged} (t = {time}, {self.steps} steps, polished = {self.polished})",
            f"consumption reduction     {self.consumption_reduction:.4f} A ({self.reduction_percent:.2f} %)",
            f"unconstrained benchmark   {self.benchmark_reduction_percent:.2f} %",
            f"flexibility level         {100.0 * self.flexibility_level:.2f} %",
            f"total demand              {self.total_demand:.4f} A",
            f"average voltage           {self.average_voltage:.4f} V",
            f"voltage range             [{self.min_voltage:.4f}, {self.max_voltage:.4f}] V (band ok = {self.voltage_band_ok})",
            f"voltage identity gap      {self.voltage_identity_gap:.3e}",
            f"current sharing spread    {self.sharing_spread:.3e} A",
            f"KKT residual              {self.kkt_residual:.3e} (relative {self.kkt_relative:.3e})",
            f"plant residual            {self.plant_residual:.3e} (relative {self.plant_relative:.3e})",
            f"rate / scale (max)        {self.max_rate_ratio:.3e}",
            f"loss identity gap         {self.loss_identity_gap:.3e}",
            f"Lyapunov violations       {self.lyapunov_violations}",
            f"plant dissipation margin  {self.dissipation_margin:.3e}",
        ]
