"""
Open-boundary many-body QFI from spectral projectors.

Every level with E < -ZERO_MODE_TOL * ||H|| at the central lambda is filled and
the same count is kept at lambda +- h; exact zero modes stay empty. The 2D model
is treated in strip geometry: periodic along x, open along y, so the QFI is
the sum of the virtual-wire QFIs over the kx grid.
"""

import logging
from typing import Optional

import numpy as np

from ..core.config import settings
from ..core.errors import InvalidOccupation
from ..core.linalg import hermitian_eig, spectral_projector
from ..estimation.derivatives import default_step
from ..hamiltonians.block import assemble_dense
from ..hamiltonians.chern import build_chern_wire
from ..hamiltonians.families import ModelFamily, wrap_momentum
from .slater import qfi_slater_projector

logger = logging.getLogger(__name__)


def filled_count(energies: np.ndarray) -> int:
    scale = max(float(np.abs(energies).max()), np.finfo(float).tiny)
    return int(np.count_nonzero(energies < -settings.ZERO_MODE_TOL * scale))


def qfi_chain_projector(build, lam: float, h: Optional[float] = None) -> float:
    """Projector QFI of the filled sea of ``build(lambda) -> BlockHamiltonian1D``."""
    h = default_step(lam) if h is None else h
    eig = hermitian_eig(assemble_dense(build(lam)))
    n_occ = filled_count(eig.eigenvalues)
    if n_occ == 0:
        raise InvalidOccupation(f"No negative levels at lambda={lam}.")
    P_plus = spectral_projector(hermitian_eig(assemble_dense(build(lam + h))), n_occ)
    P_minus = spectral_projector(hermitian_eig(assemble_dense(build(lam - h))), n_occ)
    return qfi_slater_projector(P_minus, P_plus, h)


def qfi_obc_projector(family: ModelFamily, lam: float, L: int, h: Optional[float] = None) -> float:
    """Many-body QFI of the open chain of ``family`` (SSH: last b orbital decoupled)."""
    return qfi_chain_projector(lambda x: family.build(x, L), lam, h)


def qfi_strip(lam: float, L: int, t1: float = None, t2: float = None, h: Optional[float] = None) -> float:
    """Chern insulator on an L x L strip: sum over kx = 2 pi kappa / L of open-wire QFIs."""
    t1 = settings.DEFAULT_T1 if t1 is None else t1
    t2 = settings.DEFAULT_T2 if t2 is None else t2
    total = []
    for kx in wrap_momentum(2 * np.pi * np.arange(L) / L):
        wire = lambda x, kx=kx: build_chern_wire(kx, x, t1, t2, L)
        total.append(qfi_chain_projector(wire, lam, h))
    logger.debug("strip lambda=%g L=%d: %d wires", lam, L, len(total))
    return float(np.sum(total))
