"""
Gauge-fixed central-difference derivatives of eigenvector families.

Eigensolvers return each state with an arbitrary phase; before differencing,
psi(lambda +- h) is rotated so that its overlap with psi(lambda) is real
positive. An overlap magnitude below one half means the selector jumped to a
different branch.
"""

import logging
from typing import Callable, Optional

import numpy as np

from ..core.config import settings
from ..core.errors import StateCrossing
from ..hamiltonians.block import assemble_dense
from ..hamiltonians.families import ModelFamily
from .fisher import PureState, StateDerivative, qfi_pure

logger = logging.getLogger(__name__)

MIN_OVERLAP = 0.5

StateFn = Callable[[float], np.ndarray]
Selector = Callable[[np.ndarray], np.ndarray]


def default_step(lam: float) -> float:
    return settings.FD_STEP * max(1.0, abs(lam))


def fix_gauge(reference: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Rotate ``vector`` so that <reference|vector> is real and positive."""
    ov = np.vdot(reference, vector)
    if abs(ov) < MIN_OVERLAP:
        raise StateCrossing(f"|<psi(lambda)|psi(lambda+-h)>| = {abs(ov):.3f}; selected state changed branch.")
    return vector * (np.conj(ov) / abs(ov))


def state_derivative(state_fn: StateFn, lam: float, h: Optional[float] = None) -> StateDerivative:
    """Central difference of a normalised state family ``state_fn``."""
    h = default_step(lam) if h is None else h
    if h <= 0:
        raise ValueError("Finite-difference step must be positive.")
    psi = PureState.normalized(state_fn(lam))
    plus = fix_gauge(psi.amplitudes, PureState.normalized(state_fn(lam + h)).amplitudes)
    minus = fix_gauge(psi.amplitudes, PureState.normalized(state_fn(lam - h)).amplitudes)
    return StateDerivative(base=psi, derivative=(plus - minus) / (2.0 * h), step=h)


def numerical_state_derivative(
    family: ModelFamily,
    selector: Selector,
    lam: float,
    L: int,
    h: Optional[float] = None,
) -> StateDerivative:
    """Derivative of ``selector(H(lambda))`` for the open chain of ``family``."""

    def state_fn(x: float) -> np.ndarray:
        return selector(assemble_dense(family.build(x, L)))

    return state_derivative(state_fn, lam, h)


def step_halving_ratio(state_fn: StateFn, lam: float, h: float, exact: float) -> float:
    """err(h) / err(h/2) of the QFI from central differences; ~4 for an O(h^2) scheme."""
    err_h = abs(qfi_pure(state_derivative(state_fn, lam, h)) - exact)
    err_half = abs(qfi_pure(state_derivative(state_fn, lam, h / 2)) - exact)
    ratio = err_h / err_half if err_half > 0 else float("inf")
    logger.debug("step halving at lambda=%g, h=%g: ratio %.3f", lam, h, ratio)
    return ratio
