import numpy as np
import pytest
from numpy.testing import assert_allclose

from topo_sensing.core.errors import InvalidParams, InvalidSize, NonHermitianInput
from topo_sensing.core.linalg import SIGMA_X, SIGMA_Z, pauli_matrix
from topo_sensing.hamiltonians.band_inversion import band_inversion_bloch
from topo_sensing.hamiltonians.block import BlockHamiltonian1D, assemble_dense, bloch_matrix, embed
from topo_sensing.hamiltonians.chern import BlochField2D, build_chern_wire, chern_bloch, chern_wire_blocks
from topo_sensing.hamiltonians.families import custom_family, get_family, wrap_momentum
from topo_sensing.hamiltonians.ssh import build_ssh, ssh_bloch, ssh_blocks


class TestBlockAssembly:

    def test_ssh_dimension_with_decoupled_orbital(self):
        chain = build_ssh(0.4, 10)
        H = assemble_dense(chain)
        assert H.shape == (19, 19)
        assert_allclose(H, H.conj().T)

    def test_chern_wire_is_hermitian(self):
        H = assemble_dense(build_chern_wire(0.3, -1.2, L2=12))
        assert H.shape == (24, 24)
        assert_allclose(H, H.conj().T)

    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.8])
    def test_ssh_zero_mode(self, lam):
        L = 12
        H = assemble_dense(build_ssh(lam, L))
        v = np.zeros(2 * L - 1)
        v[0::2] = (-lam) ** np.arange(L)
        assert_allclose(H @ v, 0.0, atol=1e-12)

    def test_full_chain_spectrum_is_chiral(self):
        E = np.linalg.eigvalsh(assemble_dense(build_ssh(0.6, 9, decouple_last_b=False)))
        assert_allclose(E, -E[::-1], atol=1e-12)

    def test_embed_restores_decoupled_slot(self):
        chain = build_ssh(0.5, 3)
        full = embed(np.arange(5, dtype=float) + 1, chain)
        assert_allclose(full, [1, 2, 3, 4, 5, 0])

    def test_rejects_non_hermitian_onsite(self):
        with pytest.raises(NonHermitianInput):
            BlockHamiltonian1D(L=3, d=2, hop_blocks=(np.array([[0, 1], [0, 0]]),))

    def test_ssh_needs_two_cells(self):
        with pytest.raises(InvalidSize):
            build_ssh(0.5, 1)


class TestBlochConsistency:

    @pytest.mark.parametrize("k", [-2.0, 0.0, 0.7, np.pi / 2])
    def test_ssh_blocks_match_bloch(self, k):
        assert_allclose(bloch_matrix(ssh_blocks(0.7), k), ssh_bloch(0.7, k), atol=1e-14)

    @pytest.mark.parametrize("kx,ky", [(0.0, 0.0), (np.pi / 2, 1.1), (-0.4, 2.5)])
    def test_chern_wire_blocks_match_bloch(self, kx, ky):
        expected = pauli_matrix(chern_bloch(kx, ky, -1.5, 1.0, 1.0))
        assert_allclose(bloch_matrix(chern_wire_blocks(kx, -1.5), ky), expected, atol=1e-14)

    def test_periodic_ssh_spectrum_matches_bloch(self):
        L = 8
        H = assemble_dense(build_ssh(0.3, L, decouple_last_b=False, periodic=True))
        ks = 2 * np.pi * np.arange(L) / L
        bloch = np.concatenate([np.linalg.eigvalsh(m) for m in ssh_bloch(0.3, ks)])
        assert_allclose(np.sort(np.linalg.eigvalsh(H)), np.sort(bloch), atol=1e-12)

    def test_bloch_field_gap_closes_at_dirac_point(self):
        field = BlochField2D(lam=-4.0)
        assert field.gap(np.pi / 2, np.pi / 2) == pytest.approx(0.0, abs=1e-14)

    def test_band_inversion_matrix(self):
        H = band_inversion_bloch(np.array([0.5]), 1.0, alpha=2.0, lambda_c=0.5)[0]
        assert_allclose(H, SIGMA_X + 0.5 * SIGMA_Z)


class TestFamilies:

    def test_unknown_model(self):
        with pytest.raises(InvalidParams):
            get_family("kitaev")

    def test_none_params_fall_back_to_defaults(self):
        fam = get_family("chern-bloch", t1=None, t2=2.0)
        assert fam.params == {"t1": 1.0, "t2": 2.0}

    def test_critical_points(self):
        assert get_family("ssh").lambda_c == 1.0
        assert get_family("chern-bloch").lambda_c == -4.0
        assert get_family("chern-wire").lambda_c == pytest.approx(-4.0)

    @pytest.mark.parametrize("lam,expected", [(0.0, True), (0.99, True), (1.0, False), (1.5, False)])
    def test_ssh_phase(self, lam, expected):
        assert get_family("ssh").is_topological(lam) is expected

    def test_momentum_grid_is_wrapped(self):
        assert_allclose(get_family("ssh").momentum_grid(4), [0, np.pi / 2, -np.pi, -np.pi / 2])
        assert get_family("chern-bloch").momentum_grid(6).shape == (36, 2)
        assert_allclose(wrap_momentum([np.pi, 3 * np.pi]), [-np.pi, -np.pi])

    def test_chern_bloch_has_no_open_chain(self):
        with pytest.raises(InvalidParams):
            get_family("chern-bloch").build(-1.0, 8)

    def test_zero_t2_rejected(self):
        with pytest.raises(InvalidParams):
            chern_bloch(0.0, 0.0, 1.0, t2=0.0)

    def test_custom_family_derivative_by_differences(self):
        fam = custom_family(lambda lam, L: build_ssh(lam, L))
        ks = np.array([0.1, 1.3])
        assert_allclose(fam.bloch_derivative(0.3, ks), np.stack([-SIGMA_X, -SIGMA_X]), atol=1e-8)
