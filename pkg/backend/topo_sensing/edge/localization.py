"""
Numerical edge / band-edge state selection and localisation diagnostics.

Left edge (site 0) is the reference edge throughout; right-edge partners are
deselected by their weight on the first ceil(L/4) sites.
"""

import logging
import math
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import null_space

from ..core.config import settings
from ..core.errors import NoGapIsolation, NoLowerBand, NonMonotonic
from ..core.linalg import canonical_phases, check_hermitian, hermitian_eig
from ..estimation.fisher import PureState, position_probabilities

logger = logging.getLogger(__name__)

WEIGHT_GAP = 1e-6
MAX_RISING_FRACTION = 0.2


def _left_rows(dimension: int, d: int) -> int:
    n_sites = math.ceil(dimension / d)
    return min(math.ceil(n_sites / 4) * d, dimension)


def edge_weight(state: PureState, d: int) -> float:
    """Probability on the first ceil(L/4) sites."""
    amps = state.amplitudes
    return float(np.sum(np.abs(amps[: _left_rows(amps.shape[0], d)]) ** 2))


def _most_left_weighted(vecs: np.ndarray, d: int, what: str) -> Tuple[np.ndarray, float]:
    left = vecs[: _left_rows(vecs.shape[0], d)]
    weights, rot = np.linalg.eigh(left.conj().T @ left)
    if weights.size > 1 and weights[-1] - weights[-2] < WEIGHT_GAP:
        raise NoGapIsolation(
            f"{vecs.shape[1]} {what} with indistinguishable left weights "
            f"({weights[-1]:.3e} vs {weights[-2]:.3e})."
        )
    psi = vecs @ rot[:, -1]
    return psi / np.linalg.norm(psi), float(weights[-1])


def left_boundary_solution(H: np.ndarray, d: int, energy: float) -> np.ndarray:
    """
    Most left-weighted solution of (H - E) psi = 0 on every site but the last.

    Dropping the rows of the last site leaves at least d free directions; the
    state pinned by the left boundary is the semi-infinite edge ansatz
    restricted to L sites, smooth in the model parameter even when the left
    and right edge modes hybridise into a +-E pair.
    """
    rows = H.shape[0] - d
    shifted = H[:rows] - energy * np.eye(H.shape[0], dtype=H.dtype)[:rows]
    basis = null_space(shifted)
    psi, _ = _most_left_weighted(basis, d, "boundary solutions")
    return psi


def extract_edge_state(H: np.ndarray, d: int) -> Tuple[PureState, float]:
    """
    Eigenstate closest to zero energy, rotated towards the left edge.

    All eigenpairs whose |E| lies within EDGE_CLUSTER_TOL of the smallest |E|
    form the candidate set (chiral partners +-E always land together). A single
    candidate is returned as is. A cluster is rotated to diagonalise the
    left-region weight; the energy of its most left-weighted vector fixes the
    boundary solution that is returned with its energy <psi|H|psi>.
    """
    H = check_hermitian(H)
    eig = hermitian_eig(H, site_dim=d)
    energies = eig.eigenvalues
    scale = max(float(np.abs(energies).max()), 1.0)
    mags = np.abs(energies)
    cluster = np.flatnonzero(np.abs(mags - mags.min()) <= settings.EDGE_CLUSTER_TOL * scale)

    if cluster.size == 1:
        i = int(cluster[0])
        return PureState.normalized(eig.vector(i)), float(energies[i])

    mixed, weight = _most_left_weighted(eig.eigenvectors[:, cluster], d, "near-zero states")
    reference = float(np.vdot(mixed, H @ mixed).real)
    psi = canonical_phases(left_boundary_solution(H, d, reference)[:, None])[:, 0]
    energy = float(np.vdot(psi, H @ psi).real)
    logger.debug("edge cluster of %d states, left weight %.6f, E=%.3e", cluster.size, weight, energy)
    return PureState.normalized(psi), energy


def extract_bulk_state(H: np.ndarray) -> PureState:
    """Top of the lower band: the largest eigenvalue strictly below zero."""
    eig = hermitian_eig(H)
    energies = eig.eigenvalues
    scale = max(float(np.abs(energies).max()), np.finfo(float).tiny)
    below = np.flatnonzero(energies < -settings.ZERO_MODE_TOL * scale)
    if below.size == 0:
        raise NoLowerBand("Spectrum has no negative eigenvalue.")
    return PureState.normalized(eig.vector(int(below[-1])))


def edge_selector(d: int):
    return lambda H: extract_edge_state(H, d)[0].amplitudes


def bulk_selector(H: np.ndarray) -> np.ndarray:
    return extract_bulk_state(H).amplitudes


def localization_parameter(state: PureState, d: int, decoupled: Sequence[int] = ()) -> float:
    """
    Estimate of |z| from the decay of site probabilities:
    exp(mean of 0.5 * ln(p_{j+1}/p_j)) over 1 <= j < L/2.
    """
    p = position_probabilities(state, d, decoupled).p
    L = p.shape[0]
    significant = p > 1e-20 * p.max()
    stop = L // 2
    if not significant[1:].any():
        return 0.0
    j = np.arange(1, max(stop, 2))
    j = j[(j + 1 < L) & significant[j] & significant[np.minimum(j + 1, L - 1)]]
    if j.size == 0:
        return 0.0
    ratios = p[j + 1] / p[j]
    rising = np.count_nonzero(ratios > 1.0)
    if rising > MAX_RISING_FRACTION * ratios.size:
        raise NonMonotonic(f"{rising} of {ratios.size} site ratios exceed 1.")
    return float(np.exp(np.mean(0.5 * np.log(ratios))))
