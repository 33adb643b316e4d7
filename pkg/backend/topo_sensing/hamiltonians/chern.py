"""
Two-band Chern insulator on the square lattice.

    H_k = B(k) . sigma,
    B = (2 t1 cos kx, 2 t1 cos ky, m_z + 2 t2 (sin kx + sin ky)),  m_z = lambda * t2

At fixed kx the model is a 1D "virtual wire" along y with blocks
h_0(kx) and h_1(kx); open boundaries along y give the strip geometry.
"""

from dataclasses import dataclass

import numpy as np

from ..core.errors import InvalidParams, InvalidSize
from ..core.linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, pauli_matrix
from .block import OPEN, PERIODIC, BlockHamiltonian1D


def _check_t2(t2: float) -> None:
    if t2 == 0:
        raise InvalidParams("t2 must be nonzero (lambda is measured in units of t2).")


def chern_bloch(kx, ky, lam: float, t1: float = 1.0, t2: float = 1.0) -> np.ndarray:
    """B(kx, ky) with shape broadcast(kx, ky) + (3,)."""
    _check_t2(t2)
    kx, ky = np.broadcast_arrays(np.asarray(kx, dtype=float), np.asarray(ky, dtype=float))
    b = np.empty(kx.shape + (3,), dtype=float)
    b[..., 0] = 2 * t1 * np.cos(kx)
    b[..., 1] = 2 * t1 * np.cos(ky)
    b[..., 2] = lam * t2 + 2 * t2 * (np.sin(kx) + np.sin(ky))
    return b


@dataclass(frozen=True)
class BlochField2D:
    lam: float
    t1: float = 1.0
    t2: float = 1.0

    def __call__(self, kx, ky) -> np.ndarray:
        return chern_bloch(kx, ky, self.lam, self.t1, self.t2)

    def matrix(self, kx, ky) -> np.ndarray:
        return pauli_matrix(self(kx, ky))

    def gap(self, kx, ky) -> np.ndarray:
        return 2 * np.linalg.norm(self(kx, ky), axis=-1)


def chern_wire_blocks(kx: float, lam: float, t1: float = 1.0, t2: float = 1.0):
    _check_t2(t2)
    h0 = 2 * t1 * np.cos(kx) * SIGMA_X + (lam * t2 + 2 * t2 * np.sin(kx)) * SIGMA_Z
    h1 = t1 * SIGMA_Y - 1j * t2 * SIGMA_Z
    return h0, h1


def build_chern_wire(kx: float, lam: float, t1: float = 1.0, t2: float = 1.0, L2: int = 64, periodic: bool = False) -> BlockHamiltonian1D:
    if L2 < 2:
        raise InvalidSize(f"Chern wire needs L2 >= 2, got {L2}.")
    return BlockHamiltonian1D(
        L=L2,
        d=2,
        hop_blocks=chern_wire_blocks(kx, lam, t1, t2),
        boundary=PERIODIC if periodic else OPEN,
    )


def chern_bloch_derivative(shape, t2: float = 1.0) -> np.ndarray:
    # lambda enters only through m_z = lambda*t2
    return np.broadcast_to(t2 * SIGMA_Z, tuple(shape) + (2, 2)).copy()
