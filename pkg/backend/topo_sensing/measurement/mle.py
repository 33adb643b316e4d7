"""
Maximum-likelihood estimation of lambda from site counts.

A position model maps lambda to the site distribution p_j(lambda). The
likelihood is scanned on a 64-point grid and the best bracket is refined
with a bounded scalar minimiser.
"""

import logging
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..core.errors import FlatLikelihood, InvalidParams
from ..edge.localization import bulk_selector, edge_selector
from ..estimation.fisher import PureState, ProbabilityVector, cfi, position_probabilities
from ..hamiltonians.block import assemble_dense
from ..hamiltonians.families import ModelFamily, ModelKind

logger = logging.getLogger(__name__)

GRID_POINTS = 64
XTOL = 1e-8
FLAT_TOL = 1e-12

PositionModel = Callable[[float], np.ndarray]


def ssh_edge_position_model(L: int) -> PositionModel:
    """p_j = (1 - lambda^2) lambda^{2j} / (1 - lambda^{2L}) for the SSH left zero mode."""
    j = np.arange(L)

    def model(lam: float) -> np.ndarray:
        w = np.ones(L)
        w[1:] = float(lam * lam) ** j[1:]
        return w / w.sum()

    return model


def numeric_position_model(family: ModelFamily, L: int) -> PositionModel:
    """Site distribution of the numerically selected edge (or band-edge) state."""

    def model(lam: float) -> np.ndarray:
        chain = family.build(lam, L)
        H = assemble_dense(chain)
        select = edge_selector(chain.d) if family.is_topological(lam) else bulk_selector
        state = PureState.normalized(select(H))
        return position_probabilities(state, chain.d, chain.decoupled_indices()).p

    return model


def position_model(family: ModelFamily, L: int) -> PositionModel:
    if family.kind == ModelKind.SSH:
        return ssh_edge_position_model(L)
    return numeric_position_model(family, L)


def position_fisher(model: PositionModel, lam: float, h: float = 1e-6) -> float:
    """Classical Fisher information of the model at ``lam`` (central difference in lambda)."""
    dp = (model(lam + h) - model(lam - h)) / (2.0 * h)
    return cfi(ProbabilityVector(p=model(lam), dp=dp))


def log_likelihood(counts: np.ndarray, p: np.ndarray) -> float:
    seen = counts > 0
    if np.any(p[seen] <= 0):
        return -np.inf
    return float(np.sum(counts[seen] * np.log(p[seen])))


def mle_estimate(counts: Sequence[int], model: PositionModel, interval: Tuple[float, float]) -> float:
    counts = np.asarray(counts)
    if counts.sum() < 1:
        raise InvalidParams("Counts must total at least one sample.")
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise InvalidParams(f"Empty search interval {interval}.")

    def nll(lam: float) -> float:
        return -log_likelihood(counts, model(lam))

    grid = np.linspace(lo, hi, GRID_POINTS)
    values = np.array([-nll(x) for x in grid])
    finite = values[np.isfinite(values)]
    if finite.size == 0 or (finite.size == values.size and np.ptp(finite) < FLAT_TOL):
        raise FlatLikelihood(f"Likelihood is flat on [{lo}, {hi}].")

    i = int(np.argmax(values))
    bracket = (grid[max(i - 1, 0)], grid[min(i + 1, GRID_POINTS - 1)])
    res = minimize_scalar(nll, bounds=bracket, method="bounded", options={"xatol": XTOL})
    if np.isfinite(res.fun) and -res.fun >= values[i]:
        return float(res.x)
    return float(grid[i])
