"""
Finite 1D chains with ``d`` orbitals per site and uniform hopping blocks.

    H = sum_j c_j^dagger h_0 c_j + sum_{r>=1} sum_j (c_j^dagger h_r c_{j+r} + h.c.)

Flat index of orbital ``m`` on site ``j`` is ``j*d + m``. Orbitals listed in
``decoupled`` are removed from the Hilbert space after assembly.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from ..core.errors import InvalidParams, InvalidSize
from ..core.linalg import check_hermitian

logger = logging.getLogger(__name__)

OPEN = "open"
PERIODIC = "periodic"


@dataclass(frozen=True)
class BlockHamiltonian1D:
    L: int
    d: int
    hop_blocks: Tuple[np.ndarray, ...]
    boundary: str = OPEN
    decoupled: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.L < 1:
            raise InvalidSize(f"L must be >= 1, got {self.L}.")
        if self.boundary not in (OPEN, PERIODIC):
            raise InvalidParams(f"Unknown boundary '{self.boundary}'.")
        if not self.hop_blocks:
            raise InvalidParams("At least the on-site block h_0 is required.")
        blocks = tuple(np.asarray(b, dtype=complex) for b in self.hop_blocks)
        for r, b in enumerate(blocks):
            if b.shape != (self.d, self.d):
                raise InvalidParams(f"h_{r} has shape {b.shape}, expected {(self.d, self.d)}.")
        check_hermitian(blocks[0])
        for site, orbital in self.decoupled:
            if not (0 <= site < self.L and 0 <= orbital < self.d):
                raise InvalidParams(f"Decoupled orbital {(site, orbital)} is outside the chain.")
        object.__setattr__(self, "hop_blocks", blocks)
        object.__setattr__(self, "decoupled", tuple(sorted(set(self.decoupled))))

    @property
    def dimension(self) -> int:
        return self.L * self.d - len(self.decoupled)

    def decoupled_indices(self) -> np.ndarray:
        """Flat indices of the removed orbitals, ascending."""
        return np.asarray([j * self.d + m for j, m in self.decoupled], dtype=int)

    def kept_indices(self) -> np.ndarray:
        return np.setdiff1d(np.arange(self.L * self.d), self.decoupled_indices())


def _shift(L: int, r: int, periodic: bool) -> np.ndarray:
    # S[j, j+r] = 1
    if periodic:
        return np.roll(np.eye(L), r, axis=1)
    return np.eye(L, k=r)


def assemble_dense(h: BlockHamiltonian1D) -> np.ndarray:
    """Dense Hermitian matrix of ``h`` with decoupled rows/columns removed."""
    periodic = h.boundary == PERIODIC
    full = np.kron(np.eye(h.L), h.hop_blocks[0])
    for r, block in enumerate(h.hop_blocks[1:], start=1):
        if r >= h.L and not periodic:
            continue
        hop = np.kron(_shift(h.L, r, periodic), block)
        full = full + hop + hop.conj().T

    if h.decoupled:
        keep = h.kept_indices()
        full = full[np.ix_(keep, keep)]
    return full


def bloch_matrix(hop_blocks: Sequence[np.ndarray], k: float) -> np.ndarray:
    """H(k) = h_0 + sum_r (h_r e^{ikr} + h_r^dagger e^{-ikr})."""
    blocks = [np.asarray(b, dtype=complex) for b in hop_blocks]
    out = blocks[0].copy()
    for r, block in enumerate(blocks[1:], start=1):
        phase = np.exp(1j * k * r)
        out += block * phase + block.conj().T * np.conj(phase)
    return out


def embed(amplitudes: np.ndarray, h: BlockHamiltonian1D) -> np.ndarray:
    """Re-insert zeros for decoupled orbitals so the vector has length L*d."""
    amplitudes = np.asarray(amplitudes)
    if not h.decoupled:
        return amplitudes
    idx = h.decoupled_indices()
    # np.insert positions refer to the compressed vector
    return np.insert(amplitudes, idx - np.arange(idx.size), 0.0)
