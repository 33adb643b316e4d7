"""
Fisher information of pure states.

    QFI  F   = 4 (<d psi|d psi> - |<d psi|psi>|^2)
    CFI  F^C = sum_j (dp_j)^2 / p_j
    SLD  L   = 2 (|d psi><psi| + |psi><d psi|)
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

import numpy as np

from ..core.config import settings
from ..core.errors import DegenerateDistribution, InvalidParams, NegativeResult, ShapeMismatch

logger = logging.getLogger(__name__)

NORM_TOL = 1e-10
NEGATIVE_TOL = 1e-8


@dataclass(frozen=True)
class PureState:
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1:
            raise ShapeMismatch(f"State amplitudes must be a vector, got shape {amps.shape}.")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidParams(f"State is not normalised (norm {norm:.15f}).")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, vector) -> "PureState":
        v = np.asarray(vector, dtype=complex)
        return cls(v / np.linalg.norm(v))

    def __len__(self) -> int:
        return self.amplitudes.shape[0]

    def overlap(self, other: "PureState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class StateDerivative:
    base: PureState
    derivative: np.ndarray
    step: float = 0.0

    def __post_init__(self):
        d = np.asarray(self.derivative, dtype=complex)
        if d.shape != self.base.amplitudes.shape:
            raise ShapeMismatch(f"Derivative shape {d.shape} does not match state {self.base.amplitudes.shape}.")
        object.__setattr__(self, "derivative", d)

    @property
    def berry_connection(self) -> float:
        """Im <psi|d psi>; zero after gauge fixing."""
        return float(np.vdot(self.base.amplitudes, self.derivative).imag)


@dataclass(frozen=True)
class ProbabilityVector:
    p: np.ndarray
    dp: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        dp = np.asarray(self.dp, dtype=float)
        if p.shape != dp.shape or p.ndim != 1:
            raise ShapeMismatch(f"p {p.shape} and dp {dp.shape} must be vectors of equal length.")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "dp", dp)


def qfi_pure(sd: StateDerivative) -> float:
    psi, dpsi = sd.base.amplitudes, sd.derivative
    value = 4.0 * (np.vdot(dpsi, dpsi).real - abs(np.vdot(dpsi, psi)) ** 2)
    if value < -NEGATIVE_TOL:
        raise NegativeResult(f"QFI evaluated to {value:.3e}; the state derivative is inconsistent.")
    return max(float(value), 0.0)


def cfi(pv: ProbabilityVector, floor: float = None) -> float:
    eps = settings.PROB_FLOOR if floor is None else floor
    mask = pv.p > eps
    if not mask.any():
        raise DegenerateDistribution("Every outcome probability is below the floor.")
    return float(np.sum(pv.dp[mask] ** 2 / pv.p[mask]))


def _insert_zeros(vector: np.ndarray, flat_indices: Sequence[int]) -> np.ndarray:
    idx = np.sort(np.asarray(flat_indices, dtype=int))
    if idx.size == 0:
        return vector
    return np.insert(vector, idx - np.arange(idx.size), 0.0)


def position_probabilities(
    state: Union[PureState, StateDerivative],
    d: int,
    decoupled: Sequence[int] = (),
) -> ProbabilityVector:
    """
    Site-marginal distribution p_j = sum_m |psi_{j,m}|^2 and its lambda-derivative.

    ``decoupled`` lists flat (site*d + orbital) indices that were removed from
    the Hilbert space; they are re-inserted with zero amplitude.
    """
    if isinstance(state, StateDerivative):
        psi, dpsi = state.base.amplitudes, state.derivative
    else:
        psi, dpsi = state.amplitudes, np.zeros_like(state.amplitudes)

    psi = _insert_zeros(psi, decoupled)
    dpsi = _insert_zeros(dpsi, decoupled)
    if psi.shape[0] % d:
        raise ShapeMismatch(f"Amplitude length {psi.shape[0]} is not divisible by d={d}.")

    psi = psi.reshape(-1, d)
    dpsi = dpsi.reshape(-1, d)
    p = np.sum(np.abs(psi) ** 2, axis=1)
    dp = 2.0 * np.sum((np.conj(psi) * dpsi).real, axis=1)
    return ProbabilityVector(p=p, dp=dp)


def measurement_probabilities(sd: StateDerivative, basis: np.ndarray) -> ProbabilityVector:
    """Outcome distribution of a projective measurement whose outcomes are the columns of ``basis``."""
    basis = np.asarray(basis, dtype=complex)
    if basis.shape[0] != len(sd.base):
        raise ShapeMismatch(f"Basis has {basis.shape[0]} rows, state has {len(sd.base)}.")
    amp = basis.conj().T @ sd.base.amplitudes
    damp = basis.conj().T @ sd.derivative
    return ProbabilityVector(p=np.abs(amp) ** 2, dp=2.0 * (np.conj(amp) * damp).real)


@dataclass(frozen=True)
class SLDOperator:
    """Rank-2 SLD in factored form: L = 2 (|dpsi><psi| + |psi><dpsi|)."""

    psi: np.ndarray
    dpsi: np.ndarray

    def apply(self, v: np.ndarray) -> np.ndarray:
        return 2.0 * (self.dpsi * np.vdot(self.psi, v) + self.psi * np.vdot(self.dpsi, v))

    def dense(self) -> np.ndarray:
        outer = np.outer(self.dpsi, self.psi.conj())
        return 2.0 * (outer + outer.conj().T)

    def rho_l_squared(self) -> float:
        """Tr[rho L^2] = ||L psi||^2."""
        return float(np.linalg.norm(self.apply(self.psi)) ** 2)

    def eigenbasis(self) -> Tuple[np.ndarray, np.ndarray]:
        """Nonzero eigenvalues and their eigenvectors (columns), from the 2D span of psi and dpsi."""
        perp = self.dpsi - self.psi * np.vdot(self.psi, self.dpsi)
        norm = np.linalg.norm(perp)
        if norm < 1e-14:
            return np.zeros(1), self.psi[:, None]
        span = np.stack([self.psi, perp / norm], axis=1)
        small = span.conj().T @ np.stack([self.apply(span[:, 0]), self.apply(span[:, 1])], axis=1)
        values, vectors = np.linalg.eigh(0.5 * (small + small.conj().T))
        return values, span @ vectors


def sld_pure(sd: StateDerivative) -> SLDOperator:
    return SLDOperator(psi=sd.base.amplitudes, dpsi=sd.derivative)
