"""Grid domain layer - topology, parameters, physical state and plant dynamics."""

from src.modules.grid.domain.errors import (
    GridError,
    ParameterDomainError,
    StructuralError,
    SingularSystemError,
)
from src.modules.grid.domain.topology import GridTopology
from src.modules.grid.domain.parameters import GridParameters, LineParams, ProsumerParams
from src.modules.grid.domain.state import GridInput, GridState
from src.modules.grid.domain.plant import (
    DissipationReport,
    dissipation_check,
    grid_derivative,
    steady_state,
    steady_state_residual,
    storage_value,
)

__all__ = [
    "GridError",
    "ParameterDomainError",
    "StructuralError",
    "SingularSystemError",
    "GridTopology",
    "GridParameters",
    "LineParams",
    "ProsumerParams",
    "GridInput",
    "GridState",
    "DissipationReport",
    "dissipation_check",
    "grid_derivative",
    "steady_state",
    "steady_state_residual",
    "storage_value",
]
