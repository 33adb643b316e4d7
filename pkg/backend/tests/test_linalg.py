import numpy as np
import pytest
from numpy.testing import assert_allclose

from topo_sensing.core.errors import InvalidOccupation, NonHermitianInput, ShapeMismatch
from topo_sensing.core.linalg import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    hermitian_eig,
    operator_norm,
    pauli_matrix,
    spectral_projector,
)

from conftest import random_hermitian


class TestHermitianEig:

    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_reconstructs_matrix(self, rng, n):
        a = random_hermitian(rng, n)
        eig = hermitian_eig(a)
        assert_allclose(eig.reconstruct(), a, atol=1e-12)
        assert np.all(np.diff(eig.eigenvalues) >= 0)
        assert_allclose(eig.eigenvectors.conj().T @ eig.eigenvectors, np.eye(n), atol=1e-12)

    def test_canonical_phase(self, rng):
        eig = hermitian_eig(random_hermitian(rng, 6))
        for i in range(6):
            v = eig.vector(i)
            j = np.argmax(np.abs(v) > 1e-8 * np.abs(v).max())
            assert abs(v[j].imag) < 1e-12
            assert v[j].real > 0

    def test_degenerate_cluster_prefers_first_site(self):
        eig = hermitian_eig(np.eye(2))
        assert_allclose(eig.vector(0), [1, 0], atol=1e-12)

    def test_result_is_read_only(self, rng):
        eig = hermitian_eig(random_hermitian(rng, 3))
        with pytest.raises(ValueError):
            eig.eigenvalues[0] = 1.0

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            hermitian_eig(np.array([[0, 1], [0, 0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ShapeMismatch):
            hermitian_eig(np.zeros((2, 3)))


class TestProjectorAndNorm:

    def test_projector_is_idempotent(self, rng):
        eig = hermitian_eig(random_hermitian(rng, 8))
        P = spectral_projector(eig, 3)
        assert_allclose(P @ P, P, atol=1e-12)
        assert np.trace(P).real == pytest.approx(3.0)

    @pytest.mark.parametrize("n_occ", [0, 9])
    def test_invalid_occupation(self, rng, n_occ):
        eig = hermitian_eig(random_hermitian(rng, 8))
        with pytest.raises(InvalidOccupation):
            spectral_projector(eig, n_occ)

    def test_operator_norm(self):
        assert operator_norm(np.diag([3.0, -5.0])) == pytest.approx(5.0)


class TestPauli:

    def test_unit_vectors(self):
        assert_allclose(pauli_matrix([1, 0, 0]), SIGMA_X)
        assert_allclose(pauli_matrix([0, 1, 0]), SIGMA_Y)
        assert_allclose(pauli_matrix([0, 0, 1]), SIGMA_Z)

    def test_stack_shape(self):
        b = np.ones((4, 5, 3))
        assert pauli_matrix(b).shape == (4, 5, 2, 2)
