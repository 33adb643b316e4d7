import numpy as np
import pytest

from topo_sensing.core.errors import StateCrossing
from topo_sensing.edge.closed_form import phi_z_state, qfi_phi_z_closed_form
from topo_sensing.edge.localization import edge_selector
from topo_sensing.estimation.derivatives import (
    fix_gauge,
    numerical_state_derivative,
    state_derivative,
    step_halving_ratio,
)
from topo_sensing.estimation.fisher import qfi_pure


def phi_z(L):
    return lambda lam: phi_z_state(lam, L).amplitudes


class TestGauge:

    def test_removes_global_phase(self):
        ref = np.array([0.6, 0.8j])
        assert np.allclose(fix_gauge(ref, ref * np.exp(0.7j)), ref)

    def test_branch_jump(self):
        with pytest.raises(StateCrossing):
            fix_gauge(np.array([1.0, 0.0]), np.array([0.0, 1.0]))


class TestCentralDifference:

    @pytest.mark.parametrize("lam", [0.2, 0.5, 0.8])
    @pytest.mark.parametrize("L", [4, 16])
    def test_matches_closed_form(self, lam, L):
        sd = state_derivative(phi_z(L), lam)
        assert qfi_pure(sd) == pytest.approx(qfi_phi_z_closed_form(lam, 1.0, L), rel=1e-6)

    def test_random_eigensolver_phases(self, rng):
        L = 12

        def scrambled(lam):
            return phi_z_state(lam, L).amplitudes * np.exp(1j * rng.uniform(0, 2 * np.pi))

        sd = state_derivative(scrambled, 0.6)
        assert abs(sd.berry_connection) < 1e-6
        assert qfi_pure(sd) == pytest.approx(qfi_phi_z_closed_form(0.6, 1.0, L), rel=1e-6)

    def test_second_order_convergence(self):
        exact = qfi_phi_z_closed_form(0.5, 1.0, 16)
        ratio = step_halving_ratio(phi_z(16), 0.5, 0.02, exact)
        assert 3.5 < ratio < 4.5

    def test_step_must_be_positive(self):
        with pytest.raises(ValueError):
            state_derivative(phi_z(4), 0.5, h=0.0)

    def test_ssh_edge_state_from_diagonalisation(self, ssh):
        sd = numerical_state_derivative(ssh, edge_selector(2), 0.5, 16)
        assert qfi_pure(sd) == pytest.approx(qfi_phi_z_closed_form(0.5, 1.0, 16), rel=1e-6)
