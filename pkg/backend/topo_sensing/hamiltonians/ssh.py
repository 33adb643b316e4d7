"""SSH chain with intracell coupling J1 = lambda*J2 and intercell coupling J2."""

import numpy as np

from ..core.errors import InvalidSize
from ..core.linalg import SIGMA_X
from .block import OPEN, PERIODIC, BlockHamiltonian1D

# b_j -> a_{j+1}, i.e. (sigma_x - i sigma_y)/2
_LOWER = np.array([[0, 0], [1, 0]], dtype=complex)


def ssh_blocks(lam: float, j2: float = 1.0):
    return (-lam * j2 * SIGMA_X, -j2 * _LOWER)


def build_ssh(lam: float, L: int, decouple_last_b: bool = True, periodic: bool = False, j2: float = 1.0) -> BlockHamiltonian1D:
    """
    SSH chain of ``L`` unit cells (orbitals a, b).

    With ``decouple_last_b`` the b orbital of the last cell is removed so the
    left edge hosts the exact zero mode (-lambda)^j on the a orbitals.
    """
    if L < 2:
        raise InvalidSize(f"SSH chain needs L >= 2, got {L}.")
    decoupled = ((L - 1, 1),) if decouple_last_b else ()
    return BlockHamiltonian1D(
        L=L,
        d=2,
        hop_blocks=ssh_blocks(lam, j2),
        boundary=PERIODIC if periodic else OPEN,
        decoupled=decoupled,
    )


def ssh_bloch(lam, k, j2: float = 1.0) -> np.ndarray:
    """2x2 Bloch matrix; vectorised over ``k`` (shape (..., 2, 2))."""
    k = np.asarray(k, dtype=float)
    off = -j2 * (lam + np.exp(-1j * k))
    out = np.zeros(k.shape + (2, 2), dtype=complex)
    out[..., 0, 1] = off
    out[..., 1, 0] = np.conj(off)
    return out


def ssh_bloch_derivative(k, j2: float = 1.0) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return np.broadcast_to(-j2 * SIGMA_X, k.shape + (2, 2)).copy()
