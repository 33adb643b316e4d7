import numpy as np
import pytest
from numpy.testing import assert_allclose

from topo_sensing.core.errors import DegenerateDistribution, InvalidParams, ShapeMismatch
from topo_sensing.estimation.derivatives import state_derivative
from topo_sensing.estimation.fisher import (
    ProbabilityVector,
    PureState,
    StateDerivative,
    cfi,
    measurement_probabilities,
    position_probabilities,
    qfi_pure,
    sld_pure,
)


def qubit_rotation(theta):
    """cos(theta/2)|0> + sin(theta/2)|1> and its exact theta-derivative."""
    psi = PureState(np.array([np.cos(theta / 2), np.sin(theta / 2)]))
    d = 0.5 * np.array([-np.sin(theta / 2), np.cos(theta / 2)])
    return StateDerivative(base=psi, derivative=d)


class TestQFI:

    @pytest.mark.parametrize("theta", [0.1, 0.9, 2.0])
    def test_qubit_rotation(self, theta):
        assert qfi_pure(qubit_rotation(theta)) == pytest.approx(1.0)

    def test_phase_encoding(self):
        lam = 0.3
        psi = PureState(np.array([1, np.exp(1j * lam)]) / np.sqrt(2))
        d = np.array([0, 1j * np.exp(1j * lam)]) / np.sqrt(2)
        assert qfi_pure(StateDerivative(psi, d)) == pytest.approx(1.0)

    def test_unnormalised_state_rejected(self):
        with pytest.raises(InvalidParams):
            PureState(np.array([1.0, 1.0]))

    def test_derivative_shape_checked(self):
        with pytest.raises(ShapeMismatch):
            StateDerivative(PureState(np.array([1.0, 0.0])), np.zeros(3))


class TestCFI:

    def test_two_outcomes(self):
        assert cfi(ProbabilityVector(p=[0.5, 0.5], dp=[1.0, -1.0])) == pytest.approx(4.0)

    def test_floor_skips_impossible_outcomes(self):
        assert cfi(ProbabilityVector(p=[1.0, 0.0], dp=[0.0, 0.0])) == 0.0

    def test_all_below_floor(self):
        with pytest.raises(DegenerateDistribution):
            cfi(ProbabilityVector(p=[0.0, 0.0], dp=[0.0, 0.0]))

    def test_position_probabilities_reinsert_decoupled(self):
        state = PureState.normalized(np.ones(5))
        pv = position_probabilities(state, 2, decoupled=[5])
        assert_allclose(pv.p, [0.4, 0.4, 0.2])
        assert_allclose(pv.dp, 0.0)

    def test_position_measurement_bounded_by_qfi(self):
        sd = qubit_rotation(0.7)
        assert cfi(position_probabilities(sd, 1)) <= qfi_pure(sd) + 1e-12


class TestSLD:

    def test_rho_l_squared_equals_qfi(self):
        sd = qubit_rotation(1.3)
        assert sld_pure(sd).rho_l_squared() == pytest.approx(qfi_pure(sd))

    def test_dense_matches_factored(self, rng):
        sd = qubit_rotation(0.4)
        sld = sld_pure(sd)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert_allclose(sld.dense() @ v, sld.apply(v))

    def test_eigenbasis_is_optimal(self, rng):
        a = rng.normal(size=4) + 1j * rng.normal(size=4)
        b = rng.normal(size=4) + 1j * rng.normal(size=4)
        sd = state_derivative(lambda lam: a + lam * b, 0.2, h=1e-5)
        _, basis = sld_pure(sd).eigenbasis()
        pv = measurement_probabilities(sd, basis)
        assert pv.p.sum() == pytest.approx(1.0)
        assert cfi(pv) == pytest.approx(qfi_pure(sd), rel=1e-6)
