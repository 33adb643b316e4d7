"""
QFI of Slater-determinant ground states.

    F = 4 sum_l <d psi_l|(1 - P)|d psi_l>      (per-state form)
    F = 2 Tr[(dP)^2]                            (projector form)

The two agree because P dP P = 0 and (1-P) dP (1-P) = 0 for a projector family;
the projector form needs no phase fixing.
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..core.errors import DimensionMismatch, NegativeResult, NotAProjector
from ..core.linalg import EigenDecomposition, spectral_projector

logger = logging.getLogger(__name__)

PROJECTOR_TOL = 1e-8
NEGATIVE_TOL = 1e-8


@dataclass(frozen=True)
class OccupiedSubspace:
    states: np.ndarray  # (dimension, N), orthonormal columns
    projector: np.ndarray

    @property
    def n_occ(self) -> int:
        return int(self.states.shape[1])

    @property
    def filling(self) -> float:
        return self.n_occ / self.states.shape[0]


def occupied_subspace(eig: EigenDecomposition, n_occ: int) -> OccupiedSubspace:
    P = spectral_projector(eig, n_occ)
    return OccupiedSubspace(states=eig.eigenvectors[:, :n_occ], projector=P)


def _check_non_negative(value: float) -> float:
    if value < -NEGATIVE_TOL:
        raise NegativeResult(f"Slater QFI evaluated to {value:.3e}.")
    return max(float(value), 0.0)


def qfi_slater_states(occ: OccupiedSubspace, derivs: np.ndarray) -> float:
    """``derivs`` holds d psi_l as columns, in the order of ``occ.states``."""
    D = np.asarray(derivs, dtype=complex)
    if D.ndim == 1:
        D = D[:, None]
    if D.shape != occ.states.shape:
        raise DimensionMismatch(f"Got derivatives of shape {D.shape} for states of shape {occ.states.shape}.")
    inside = occ.states.conj().T @ D
    value = 4.0 * (np.linalg.norm(D) ** 2 - np.linalg.norm(inside) ** 2)
    return _check_non_negative(value)


def _check_projector(P: np.ndarray, label: str) -> None:
    if np.linalg.norm(P @ P - P) > PROJECTOR_TOL:
        raise NotAProjector(f"{label} is not idempotent within {PROJECTOR_TOL}.")


def qfi_slater_projector(P_minus: np.ndarray, P_plus: np.ndarray, h: float) -> float:
    """2 Tr[(dP)^2] with dP = (P_plus - P_minus) / (2h)."""
    P_minus = np.asarray(P_minus, dtype=complex)
    P_plus = np.asarray(P_plus, dtype=complex)
    if P_minus.shape != P_plus.shape:
        raise DimensionMismatch(f"Projector shapes differ: {P_minus.shape} vs {P_plus.shape}.")
    _check_projector(P_minus, "P_minus")
    _check_projector(P_plus, "P_plus")
    dP = (P_plus - P_minus) / (2.0 * h)
    # dP is Hermitian, so Tr[dP^2] is its squared Frobenius norm
    return _check_non_negative(2.0 * np.linalg.norm(dP) ** 2)
