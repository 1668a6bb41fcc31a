"""Closed-loop time integration with convergence and divergence detection."""

from dataclasses import dataclass

import numpy as np

from src.modules.controller.domain.dynamics import interconnect
from src.modules.controller.domain.optimality import kkt_residual
from src.modules.grid.domain.plant import DissipationReport, dissipation_check
from src.modules.simulation.domain.closed_loop import ClosedLoopSystem
from src.modules.simulation.domain.errors import DivergenceError, NumericInstabilityError
from src.modules.simulation.domain.integrators import make_integrator
from src.modules.simulation.domain.trace import SimTrace, TraceEvent, TraceRecorder
from src.shared.utils.logger import Logger

LYAPUNOV_RELATIVE_SLACK = 1e-9
LYAPUNOV_NOISE_FLOOR = 1e-14
# rate round-off relative to the size of its terms
ROUNDOFF_RATE = 1e-12
_SCALE_FLOOR = 1e-300


@dataclass(frozen=True)
class IntegrationSettings:
    method: str = "implicit_euler"
    step: float = 1e5
    max_steps: int = 10_000
    tolerance: float = 1e-11
    window: int = 100
    record_every: int = 1
    divergence_threshold: float = 1e9


@dataclass(frozen=True)
class IntegrationResult:
    trace: SimTrace
    final_state: np.ndarray
    converged: bool
    convergence_time: float | None
    steps: int
    lyapunov_violations: int
    max_rate_ratio: float


def rate_ratio(system: ClosedLoopSystem, z: np.ndarray) -> float:
    """max_j |z_dot_j| / s_j with s_j the sum of magnitudes of the terms of component j."""
    rate = system.rate(z)
    scale = np.maximum(system.rate_scale(z), _SCALE_FLOOR)
    return float(np.max(np.abs(rate) / scale))


def storage_noise(system: ClosedLoopSystem, z: np.ndarray) -> float:
    """S_cl of a rate made of round-off only: 1/2 sum m_j (ROUNDOFF_RATE s_j)^2."""
    scale = ROUNDOFF_RATE * system.rate_scale(z)
    return 0.5 * float(np.dot(system.mass * scale, scale))


def trace_dissipation(
    system: ClosedLoopSystem,
    trace: SimTrace,
    relative_tolerance: float = 1e-3,
) -> DissipationReport:
    """
    Plant dissipation inequality along a recorded closed-loop trajectory.

    Input and plant rates are re-evaluated from the recorded states. The supply
    integral uses the recording grid, so the check is only meaningful when the
    recorded steps resolve the plant time constants. The tolerance is taken
    relative to the peak plant storage.
    """
    if trace.is_empty:
        return DissipationReport(0.0, 0.0, 0.0, 0, True)

    layout = system.layout
    rates = np.array([system.rate(z) for z in trace.states])
    tolerance = relative_tolerance * max(float(np.max(trace.storage)), _SCALE_FLOOR)
    return dissipation_check(
        trace.times,
        trace.storage,
        d_I_s=rates[:, layout.block("I_s")],
        d_V=rates[:, layout.block("V")],
        d_u_s=rates[:, layout.block("u_s")],
        d_u_l=rates[:, layout.block("u_l")],
        I_l=system.params.I_l,
        tolerance=tolerance,
    )


def sample_kkt(system: ClosedLoopSystem, z: np.ndarray) -> float:
    """Absolute KKT residual of the controller state with the plant ports attached."""
    gstate, cstate = system.unpack(z)
    _, ports = interconnect(gstate, cstate, system.params)
    return kkt_residual(
        cstate, system.params, system.gains.weights, system.topology, ports, system.constraints
    ).absolute


def average_voltage(V: np.ndarray, pi_c: np.ndarray) -> float:
    """Capacity-weighted average voltage 1^T Pi_c V."""
    V = np.asarray(V, dtype=float)
    pi_c = np.asarray(pi_c, dtype=float)
    if V.shape != pi_c.shape:
        raise ValueError(f"V and pi_c must have equal shape, got {V.shape} and {pi_c.shape}")
    return float(pi_c @ V)


def integrate(
    system: ClosedLoopSystem,
    settings: IntegrationSettings,
    initial: np.ndarray,
) -> IntegrationResult:
    """
    Integrate the closed loop from an initial stacked state.

    Stops at max_steps or once every rate component satisfies
    |z_dot_j| <= tolerance * s_j for `window` consecutive steps. S_cl = S + S_c
    is monitored at every step; an increase beyond a relative 1e-9 counts as a
    Lyapunov violation unless S_cl is below 1e-14 of its running maximum or
    below the storage of a pure round-off rate (see storage_noise).

    Raises:
        DivergenceError: If |z|_inf exceeds the divergence threshold
        NumericInstabilityError: If the state becomes non-finite
    """
    logger = Logger("SIM:INTEGRATOR")
    integrator = make_integrator(settings.method, system, settings.step)
    recorder = TraceRecorder(system.layout)

    z = np.array(initial, dtype=float, copy=True)
    if z.shape != (system.layout.size,):
        raise NumericInstabilityError(f"initial state has shape {z.shape}, expected ({system.layout.size},)")

    def record(time: float, state: np.ndarray, storages: tuple[float, float]) -> None:
        recorder.record(time, state, storages[0], storages[1], sample_kkt(system, state))

    storages = system.storages(z)
    record(0.0, z, storages)
    previous_storage = sum(storages)
    peak_storage = previous_storage
    previous_active = system.active_set(z).key()

    consecutive = 0
    violations = 0
    converged = False
    convergence_time: float | None = None
    ratio = rate_ratio(system, z)
    step = 0

    logger.info(
        "Integration started",
        extra={"method": settings.method, "step": settings.step, "max_steps": settings.max_steps, "size": z.size},
    )

    for step in range(1, settings.max_steps + 1):
        time = step * settings.step
        z = integrator.step(z)

        if not np.all(np.isfinite(z)):
            recorder.event(TraceEvent(time, step, "non_finite"))
            logger.error("Non-finite state", extra={"time": time, "step": step})
            raise NumericInstabilityError("non-finite closed-loop state", time=time, trace=recorder.freeze())

        norm = float(np.max(np.abs(z)))
        if norm > settings.divergence_threshold:
            recorder.event(TraceEvent(time, step, "divergence", {"norm": norm}))
            record(time, z, system.storages(z))
            logger.error("Divergence detected", extra={"time": time, "norm": norm})
            raise DivergenceError(time, norm, settings.divergence_threshold, trace=recorder.freeze())

        active = system.active_set(z)
        active_key = active.key()
        if active_key != previous_active:
            recorder.event(TraceEvent(time, step, "projection", active.to_dict()))
            logger.info("Active constraint set changed", extra={"time": time, "active": active.count()})
            previous_active = active_key

        storages = system.storages(z)
        closed_loop = sum(storages)
        noise = max(LYAPUNOV_NOISE_FLOOR * peak_storage, storage_noise(system, z))
        if closed_loop > noise and closed_loop > previous_storage * (1.0 + LYAPUNOV_RELATIVE_SLACK):
            violations += 1
        peak_storage = max(peak_storage, closed_loop)
        previous_storage = closed_loop

        ratio = rate_ratio(system, z)
        consecutive = consecutive + 1 if ratio <= settings.tolerance else 0
        if consecutive >= settings.window:
            converged = True
            convergence_time = time

        if converged or step % settings.record_every == 0 or step == settings.max_steps:
            record(time, z, storages)

        if logger.is_debug() and step % 1000 == 0:
            logger.debug("Integration progress", extra={"time": time, "rate_ratio": ratio, "S_cl": closed_loop})

        if converged:
            recorder.event(TraceEvent(time, step, "converged", {"rate_ratio": ratio}))
            break

    if converged:
        logger.info("Converged", extra={"time": convergence_time, "steps": step, "lyapunov_violations": violations})
    else:
        logger.warning("Horizon reached without convergence", extra={"steps": step, "rate_ratio": ratio})

    return IntegrationResult(
        trace=recorder.freeze(),
        final_state=z,
        converged=converged,
        convergence_time=convergence_time,
        steps=step,
        lyapunov_violations=violations,
        max_rate_ratio=ratio,
    )
