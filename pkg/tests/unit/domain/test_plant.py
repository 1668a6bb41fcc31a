"""Unit tests for the plant dynamics, steady state and storage."""

import numpy as np
import pytest

from src.modules.grid.domain.errors import StructuralError
from src.modules.grid.domain.parameters import GridParameters, LineParams, ProsumerParams
from src.modules.grid.domain.plant import (
    dissipation_check,
    grid_derivative,
    steady_state,
    steady_state_residual,
    storage_value,
)
from src.modules.grid.domain.state import GridInput, GridState
from src.modules.grid.domain.topology import GridTopology
from src.modules.simulation.domain.parameter_draws import ParameterRanges, draw_parameters


@pytest.fixture
def grid10(ring10) -> GridParameters:
    """Ten-prosumer ring with parameters drawn from the test-grid ranges."""
    return draw_parameters(ParameterRanges(), ring10, rng=7)


def _random_input(rng, n: int) -> GridInput:
    return GridInput(u_s=380.0 + rng.uniform(-1.0, 1.0, n), u_l=rng.uniform(0.5, 1.0, n))


class TestGridDerivative:
    """Tests for grid_derivative()."""

    def test_zero_state_hand_substitution(self, ring10, grid10):
        """Should give dI_s = u_s / L_s with zero line and voltage rates."""
        state = GridState.zeros(10, 10)
        grid_input = GridInput(u_s=np.full(10, 380.0), u_l=np.zeros(10))

        rate = grid_derivative(state, grid_input, grid10, ring10)

        np.testing.assert_allclose(rate.I_s, 380.0 / grid10.L_s)
        np.testing.assert_array_equal(rate.I, np.zeros(10))
        np.testing.assert_array_equal(rate.V, np.zeros(10))

    def test_matches_componentwise_oracle(self, ring10, grid10, rng):
        """Should agree with a loop over prosumers and lines."""
        state = GridState(I_s=rng.normal(10, 2, 10), I=rng.normal(0, 1, 10), V=380 + rng.normal(0, 0.5, 10))
        grid_input = _random_input(rng, 10)

        rate = grid_derivative(state, grid_input, grid10, ring10)

        d_I_s = np.empty(10)
        d_V = np.empty(10)
        d_I = np.empty(10)
        for i in range(10):
            d_I_s[i] = (-grid10.R_s[i] * state.I_s[i] - state.V[i] + grid_input.u_s[i]) / grid10.L_s[i]
            injected = sum(
                state.I[k] * (1.0 if a == i else -1.0)
                for k, (a, b) in enumerate(ring10.edges)
                if i in (a, b)
            )
            d_V[i] = (state.I_s[i] + injected - grid10.I_l[i] * grid_input.u_l[i]) / grid10.C[i]
        for k, (a, b) in enumerate(ring10.edges):
            d_I[k] = (-grid10.R[k] * state.I[k] - (state.V[a] - state.V[b])) / grid10.L[k]

        np.testing.assert_allclose(rate.I_s, d_I_s, rtol=1e-12, atol=1e-9)
        np.testing.assert_allclose(rate.I, d_I, rtol=1e-12, atol=1e-9)
        np.testing.assert_allclose(rate.V, d_V, rtol=1e-12, atol=1e-9)

    def test_load_control_is_clamped(self, ring3, toy_params):
        """Should treat u_l outside [0, 1] as the nearest bound."""
        state = GridState.zeros(3, 3)
        over = grid_derivative(state, GridInput(u_s=np.zeros(3), u_l=np.full(3, 1.7)), toy_params, ring3)
        full = grid_derivative(state, GridInput(u_s=np.zeros(3), u_l=np.ones(3)), toy_params, ring3)

        np.testing.assert_array_equal(over.V, full.V)

    def test_superposition(self, ring3, toy_params, rng):
        """Should be affine in state and input."""
        zero_state = GridState.zeros(3, 3)
        zero_input = GridInput(u_s=np.zeros(3), u_l=np.zeros(3))
        x1 = GridState(I_s=rng.normal(size=3), I=rng.normal(size=3), V=rng.normal(size=3))
        x2 = GridState(I_s=rng.normal(size=3), I=rng.normal(size=3), V=rng.normal(size=3))
        u1 = GridInput(u_s=rng.normal(size=3), u_l=rng.uniform(0.0, 0.5, 3))
        u2 = GridInput(u_s=rng.normal(size=3), u_l=rng.uniform(0.0, 0.5, 3))

        combined = grid_derivative(
            GridState.from_vector(x1.as_vector() + x2.as_vector(), 3, 3),
            GridInput(u_s=u1.u_s + u2.u_s, u_l=u1.u_l + u2.u_l),
            toy_params,
            ring3,
        )
        parts = (
            grid_derivative(x1, u1, toy_params, ring3).as_vector()
            + grid_derivative(x2, u2, toy_params, ring3).as_vector()
            - grid_derivative(zero_state, zero_input, toy_params, ring3).as_vector()
        )

        np.testing.assert_allclose(combined.as_vector(), parts, atol=1e-12)

    def test_dimension_mismatch_raises_error(self, ring3, toy_params):
        """Should reject a state of the wrong size."""
        state = GridState(I_s=np.zeros(3), I=np.zeros(3), V=np.zeros(2))

        with pytest.raises(StructuralError) as exc_info:
            grid_derivative(state, GridInput(u_s=np.zeros(3), u_l=np.ones(3)), toy_params, ring3)

        assert exc_info.value.code == "STRUCTURAL_ERROR"


class TestSteadyState:
    """Tests for steady_state()."""

    def test_isolated_node_by_hand(self):
        """Should give V = u_s - R_s I_l u_l and I_s = I_l u_l without lines."""
        topology = GridTopology.create(1, [])
        params = GridParameters([ProsumerParams(R_s=0.001, L_s=2e-3, C=2e-3, I_l=10.0, pi_c=1.0, pi_u=0.0)], [])

        state = steady_state(GridInput(u_s=np.array([380.0]), u_l=np.array([1.0])), params, topology)

        np.testing.assert_allclose(state.V, [379.99])
        np.testing.assert_allclose(state.I_s, [10.0])
        assert state.I.shape == (0,)

    def test_symmetric_pair_has_no_line_current(self):
        """Should carry no current between identical prosumers."""
        topology = GridTopology.create(2, [(0, 1)])
        prosumer = ProsumerParams(R_s=1.5e-3, L_s=2e-3, C=2e-3, I_l=10.0, pi_c=0.5, pi_u=0.0)
        params = GridParameters([prosumer, prosumer], [LineParams(R=0.075, L=2.5e-6)])

        state = steady_state(GridInput(u_s=np.full(2, 380.0), u_l=np.ones(2)), params, topology)

        np.testing.assert_allclose(state.I, [0.0], atol=1e-12)

    def test_rates_vanish_at_steady_state(self, ring10, grid10, rng):
        """Should be an equilibrium of the plant dynamics."""
        grid_input = _random_input(rng, 10)

        state = steady_state(grid_input, grid10, ring10)
        rate = grid_derivative(state, grid_input, grid10, ring10)

        assert np.max(np.abs(rate.as_vector())) < 1e-8
        _, relative = steady_state_residual(state, grid_input, grid10, ring10)
        assert relative < 1e-12

    def test_current_balance(self, ring10, grid10, rng):
        """Should generate exactly the total consumed current."""
        grid_input = _random_input(rng, 10)

        state = steady_state(grid_input, grid10, ring10)

        assert np.sum(state.I_s) == pytest.approx(np.sum(grid10.I_l * grid_input.u_l), rel=1e-12)

    def test_orientation_invariance(self, ring10, grid10, rng):
        """Should give the same voltages and a sign-flipped current on a flipped edge."""
        grid_input = _random_input(rng, 10)

        original = steady_state(grid_input, grid10, ring10)
        flipped = steady_state(grid_input, grid10, ring10.flipped(2))

        np.testing.assert_allclose(flipped.V, original.V, rtol=1e-13)
        np.testing.assert_allclose(flipped.I_s, original.I_s, rtol=1e-10, atol=1e-10)
        np.testing.assert_allclose(flipped.I[2], -original.I[2], rtol=1e-10, atol=1e-12)


class TestStorage:
    """Tests for storage_value() and dissipation_check()."""

    def test_zero_rate_has_zero_storage(self, toy_params):
        """Should vanish for a zero rate."""
        assert storage_value(GridState.zeros(3, 3), toy_params) == 0.0

    def test_matches_naive_sum(self, toy_params, rng):
        """Should equal 1/2 sum of mass times squared rate."""
        rate = GridState(I_s=rng.normal(size=3), I=rng.normal(size=3), V=rng.normal(size=3))

        expected = 0.5 * (
            sum(toy_params.L_s[i] * rate.I_s[i] ** 2 for i in range(3))
            + sum(toy_params.L[k] * rate.I[k] ** 2 for k in range(3))
            + sum(toy_params.C[i] * rate.V[i] ** 2 for i in range(3))
        )

        assert storage_value(rate, toy_params) == pytest.approx(expected, rel=1e-12)

    def test_decreasing_storage_without_supply_passes(self):
        """Should pass when storage decreases under a constant input."""
        times = np.linspace(0.0, 1.0, 11)
        zeros = np.zeros((11, 2))

        report = dissipation_check(times, np.exp(-times), zeros, zeros, zeros, zeros, np.ones(2))

        assert report.passed
        assert report.margin >= 0.0
        assert report.supply_integral == 0.0

    def test_increasing_storage_without_supply_fails(self):
        """Should report, not raise, a storage increase beyond the supplied energy."""
        times = np.linspace(0.0, 1.0, 11)
        zeros = np.zeros((11, 2))

        report = dissipation_check(times, times.copy(), zeros, zeros, zeros, zeros, np.ones(2))

        assert not report.passed
        assert report.margin == pytest.approx(-1.0)
        assert report.worst_index == 10

    def test_single_sample_is_trivially_passive(self):
        """Should pass an equilibrium trace with one sample."""
        report = dissipation_check(np.zeros(1), np.zeros(1), np.zeros((1, 2)), np.zeros((1, 2)),
                                   np.zeros((1, 2)), np.zeros((1, 2)), np.ones(2))

        assert report.passed
        assert report.storage_delta == 0.0
