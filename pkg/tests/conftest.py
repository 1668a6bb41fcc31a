"""Pytest fixtures and configuration."""

from pathlib import Path
from unittest.mock import MagicMock

import numpy as np
import pytest

from src.modules.controller.domain.state import ConstraintSettings, ControllerGains
from src.modules.grid.domain.parameters import GridParameters, LineParams, ProsumerParams
from src.modules.grid.domain.topology import GridTopology
from src.modules.psychosocial.application.ports.appliance_table_source import ApplianceTableSource
from src.modules.psychosocial.domain.appliance import ApplianceTable
from src.modules.psychosocial.infrastructure.toml_appliance_table_source import TomlApplianceTableSource
from src.modules.simulation.application.ports.config_source import ConfigSource
from src.modules.simulation.application.ports.trace_exporter import TraceExporter
from src.modules.simulation.domain.closed_loop import ClosedLoopSystem
from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.modules.welfare.domain.weights import WelfareWeights

PRESETS_DIR = Path(__file__).resolve().parent.parent / "presets"

# Small, well-conditioned grid: every time scale is between 0.01 s and ~20 s.
TOY_I_L = (1.0, 1.5, 2.0)
TOY_PI_U = (0.2, 0.2, 0.2)
TOY_V_D = 10.0


# ============================================
# GRID FIXTURES
# ============================================

@pytest.fixture
def ring3() -> GridTopology:
    """Three prosumers on a ring."""
    return GridTopology.ring(3)


@pytest.fixture
def ring10() -> GridTopology:
    """The ten-prosumer ring test grid."""
    return GridTopology.ring(10)


@pytest.fixture
def make_params():
    """Factory for toy parameters on a ring of len(I_l) prosumers."""

    def factory(
        I_l: tuple[float, ...] = TOY_I_L,
        pi_u: tuple[float, ...] = TOY_PI_U,
        V_min: float = 5.0,
        V_max: float = 15.0,
        u_l_min: float = 0.0,
        R_s: float = 1.0,
        R: float = 1.0,
    ) -> GridParameters:
        n = len(I_l)
        prosumers = [
            ProsumerParams(
                R_s=R_s,
                L_s=0.1,
                C=0.1,
                I_l=I_l[i],
                pi_c=1.0 / n,
                pi_u=pi_u[i],
                V_d=TOY_V_D,
                V_min=V_min,
                V_max=V_max,
                u_l_min=u_l_min,
            )
            for i in range(n)
        ]
        lines = [LineParams(R=R, L=0.1) for _ in range(n)]
        return GridParameters(prosumers, lines)

    return factory


@pytest.fixture
def toy_params(make_params) -> GridParameters:
    """Toy parameters on a three-prosumer ring."""
    return make_params()


@pytest.fixture
def toy_weights() -> WelfareWeights:
    """Weights keeping the toy equilibrium load controls inside (0, 1)."""
    return WelfareWeights(alpha=10.0, beta=1e-3, gamma=1.0)


@pytest.fixture
def toy_gains(toy_weights) -> ControllerGains:
    """Unit time constants with the toy weights."""
    return ControllerGains(weights=toy_weights)


@pytest.fixture
def make_system(ring3, toy_gains):
    """Factory for closed loops on the toy ring."""

    def factory(params: GridParameters, constraints: ConstraintSettings | None = None) -> ClosedLoopSystem:
        return ClosedLoopSystem(params, ring3, toy_gains, constraints or ConstraintSettings.unconstrained())

    return factory


@pytest.fixture
def toy_system(make_system, toy_params) -> ClosedLoopSystem:
    """Unconstrained toy closed loop."""
    return make_system(toy_params)


# ============================================
# PSYCHOSOCIAL FIXTURES
# ============================================

@pytest.fixture
def appliance_table() -> ApplianceTable:
    """Shipped appliance dataset."""
    return TomlApplianceTableSource().load()


# ============================================
# MOCK FIXTURES
# ============================================

@pytest.fixture
def mock_appliance_source(appliance_table) -> MagicMock:
    """Create a mock appliance table source returning the shipped dataset."""
    mock = MagicMock(spec=ApplianceTableSource)
    mock.load.return_value = appliance_table
    return mock


@pytest.fixture
def mock_config_source() -> MagicMock:
    """Create a mock scenario config source."""
    return MagicMock(spec=ConfigSource)


@pytest.fixture
def mock_trace_exporter() -> MagicMock:
    """Create a mock trace exporter."""
    mock = MagicMock(spec=TraceExporter)
    mock.export.return_value = []
    return mock


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized property checks."""
    return np.random.default_rng(12345)


# ============================================
# SCENARIO FIXTURES
# ============================================

@pytest.fixture
def toy_document() -> dict:
    """Scenario document reproducing the toy closed loop, started at its equilibrium."""
    return {
        "name": "toy",
        "seed": 3,
        "grid": {"topology": "ring", "n": 3},
        "parameters": {
            "V_d": "10 V",
            "V_min": "5 V",
            "V_max": "15 V",
            "ranges": {"R_s": "1 ohm", "L_s": "0.1 H", "C": "0.1 F", "R": "1 ohm", "L": "0.1 H"},
            "values": {"I_l": list(TOY_I_L)},
        },
        "weights": {"alpha": 10.0, "beta": 1e-3, "gamma": 1.0},
        "flexibility": {"source": "explicit", "level": 0.375, "u_l_min": 0.0, "spread_cv": 0.0},
        "integration": {
            "step": "1 s",
            "horizon": "10000 s",
            "tolerance": 1e-9,
            "window": 20,
            "initial": "equilibrium",
        },
    }


@pytest.fixture
def toy_config(toy_document) -> ScenarioConfig:
    """Validated toy scenario."""
    return ScenarioConfig.model_validate(toy_document)


@pytest.fixture
def presets_dir() -> Path:
    """Directory of the shipped preset scenarios."""
    return PRESETS_DIR
