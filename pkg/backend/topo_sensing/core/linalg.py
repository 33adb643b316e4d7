"""
Dense complex Hermitian linear algebra.

Everything downstream (Hamiltonian assembly, edge-state extraction,
Slater projectors) consumes the three primitives defined here:
``hermitian_eig``, ``spectral_projector`` and ``operator_norm``.
Tolerances are relative to the matrix scale so the routines are
independent of the energy unit.
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from .config import settings
from .errors import ConvergenceFailure, InvalidOccupation, NonHermitianInput, ShapeMismatch

logger = logging.getLogger(__name__)

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HERMITIAN_RTOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, copy=True)
    out.setflags(write=False)
    return out


def as_square(a) -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"Expected a square matrix, got shape {arr.shape}.")
    return arr


def check_hermitian(a, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Return ``a`` as a complex array, raising NonHermitianInput if A != A^dagger."""
    arr = as_square(a)
    scale = float(np.abs(arr).max()) if arr.size else 0.0
    if scale == 0.0:
        return arr
    asym = float(np.abs(arr - arr.conj().T).max())
    if asym > rtol * scale:
        raise NonHermitianInput(
            f"Matrix is not Hermitian: max|A - A^H| = {asym:.3e} (scale {scale:.3e})."
        )
    return arr


def pauli_matrix(b: np.ndarray) -> np.ndarray:
    """B . sigma for a real 3-vector, or a stack of them with shape (..., 3)."""
    b = np.asarray(b, dtype=float)
    return (
        b[..., 0, None, None] * SIGMA_X
        + b[..., 1, None, None] * SIGMA_Y
        + b[..., 2, None, None] * SIGMA_Z
    )


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the matching unitary matrix of column eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.eigenvalues.shape[0])

    def vector(self, i: int) -> np.ndarray:
        return self.eigenvectors[:, i]

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def _first_significant(column: np.ndarray, rtol: float = 1e-8) -> int:
    mags = np.abs(column)
    return int(np.argmax(mags > rtol * mags.max()))


def canonical_phases(vectors: np.ndarray) -> np.ndarray:
    # first significant component of every column made real positive
    out = vectors.copy()
    for i in range(out.shape[1]):
        j = _first_significant(out[:, i])
        c = out[j, i]
        out[:, i] *= np.conj(c) / abs(c)
    return out


def _tie_break_order(values: np.ndarray, vectors: np.ndarray, site_dim: int, tol: float) -> np.ndarray:
    n = values.shape[0]
    order = []
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= tol:
            stop += 1
        cluster = list(range(start, stop))
        if len(cluster) > 1:
            first_site = np.sum(np.abs(vectors[:site_dim, cluster]) ** 2, axis=0)
            keys = {
                idx: (-round(float(w), 12), _first_significant(vectors[:, idx]))
                for idx, w in zip(cluster, first_site)
            }
            cluster.sort(key=lambda idx: keys[idx])
        order.extend(cluster)
        start = stop
    return np.asarray(order, dtype=int)


def hermitian_eig(a, site_dim: int = 1, degeneracy_tol: float = None) -> EigenDecomposition:
    """
    Full spectrum and orthonormal eigenbasis of a Hermitian matrix.

    Ordering is deterministic: ascending eigenvalue; inside numerically
    degenerate clusters, descending weight on the first lattice site
    (the first ``site_dim`` components), then by the index of the first
    significant component. Each eigenvector carries a canonical phase
    (first significant component real and positive).
    """
    arr = check_hermitian(a)
    try:
        values, vectors = scipy.linalg.eigh(arr)
    except scipy.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"Hermitian eigensolver did not converge: {e}") from e

    scale = max(float(np.abs(values).max()) if values.size else 0.0, np.finfo(float).tiny)
    rel = settings.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol
    vectors = canonical_phases(vectors)
    order = _tie_break_order(values, vectors, max(int(site_dim), 1), rel * scale)
    return EigenDecomposition(_frozen(values[order]), _frozen(vectors[:, order]))


def eigh_stack(stack: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Batched eigendecomposition of a (..., d, d) stack of small Hermitian blocks."""
    try:
        return np.linalg.eigh(np.asarray(stack, dtype=complex))
    except np.linalg.LinAlgError as e:
        raise ConvergenceFailure(f"Batched eigensolver did not converge: {e}") from e


def spectral_projector(eig: EigenDecomposition, n_occ: int) -> np.ndarray:
    """P = sum over the n_occ lowest eigenvectors of |v><v|."""
    if not 0 < n_occ <= eig.dimension:
        raise InvalidOccupation(
            f"n_occ must lie in (0, {eig.dimension}], got {n_occ}."
        )
    occupied = eig.eigenvectors[:, :n_occ]
    return occupied @ occupied.conj().T


def operator_norm(a) -> float:
    """Largest singular value."""
    arr = as_square(a)
    if arr.size == 0:
        return 0.0
    return float(np.linalg.norm(arr, 2))
