"""Controller domain layer."""

from src.modules.controller.domain.errors import GainError
from src.modules.controller.domain.state import (
    ConstraintSettings,
    ControllerGains,
    ControllerPorts,
    ControllerState,
)
from src.modules.controller.domain.dynamics import (
    clip_to_box,
    comfort_gain,
    controller_derivative,
    controller_storage,
    frozen_components,
    interconnect,
    project_box,
    rigid_loads,
)
from src.modules.controller.domain.optimality import (
    KktResidual,
    LossIdentityReport,
    controller_state_from_qp,
    kkt_residual,
    loss_penalty_identity,
)

__all__ = [
    "GainError",
    "ConstraintSettings",
    "ControllerGains",
    "ControllerPorts",
    "ControllerState",
    "clip_to_box",
    "comfort_gain",
    "controller_derivative",
    "controller_storage",
    "frozen_components",
    "interconnect",
    "project_box",
    "rigid_loads",
    "KktResidual",
    "LossIdentityReport",
    "controller_state_from_qp",
    "kkt_residual",
    "loss_penalty_identity",
]
