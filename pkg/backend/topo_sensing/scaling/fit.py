"""
Fit F(L) = a L^b + c by variable projection.

For fixed b the model is linear in (a, c), so only the one-dimensional
residual curve in b is searched: a coarse grid over ``b_range`` plus
starts at b = 0, 1, 2, each refined with a bounded scalar minimiser.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from ..core.errors import IllConditioned, InvalidParams, InvalidSize

logger = logging.getLogger(__name__)

DEFAULT_B_RANGE = (-1.0, 4.0)
DEGENERATE_TOL = 1e-14
MAX_CONDITION = 1e12
GRID_POINTS = 501
STARTS = (0.0, 1.0, 2.0)

DEGENERATE = "degenerate"


@dataclass(frozen=True)
class ScalingSeries:
    L: np.ndarray
    F: np.ndarray
    label: str = ""

    def __post_init__(self):
        L = np.asarray(self.L, dtype=float)
        F = np.asarray(self.F, dtype=float)
        if L.shape != F.shape or L.ndim != 1:
            raise InvalidParams("L and F must be vectors of equal length.")
        if np.unique(L).size < 3:
            raise InvalidSize("A scaling series needs at least 3 distinct sizes.")
        if np.any(np.diff(L) <= 0):
            raise InvalidParams("Sizes must be strictly increasing.")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "F", F)

    def __len__(self) -> int:
        return self.L.shape[0]


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    c: float
    rms_residual: float
    relative_residual: float
    flags: Tuple[str, ...] = field(default_factory=tuple)

    def predict(self, L) -> np.ndarray:
        return self.a * np.asarray(L, dtype=float) ** self.b + self.c

    @property
    def degenerate(self) -> bool:
        return DEGENERATE in self.flags


def _design(L: np.ndarray, b: float) -> Tuple[np.ndarray, np.ndarray]:
    X = np.stack([L ** b, np.ones_like(L)], axis=1)
    norms = np.linalg.norm(X, axis=0)
    return X / norms, norms


def _project(L: np.ndarray, F: np.ndarray, b: float) -> Tuple[float, float, float]:
    Xs, norms = _design(L, b)
    coef, *_ = np.linalg.lstsq(Xs, F, rcond=None)
    a, c = coef / norms
    resid = F - (a * L ** b + c)
    return float(a), float(c), float(resid @ resid)


def _condition(L: np.ndarray, b: float) -> float:
    # normal system X^T X of the column-scaled design
    Xs, _ = _design(L, b)
    return float(np.linalg.cond(Xs) ** 2)


def fit_power_law(series: ScalingSeries, b_range: Sequence[float] = DEFAULT_B_RANGE) -> FitResult:
    L, F = series.L, series.F
    if len(series) < 4:
        raise InvalidSize(f"Power-law fit needs >= 4 samples, got {len(series)}.")
    lo, hi = float(b_range[0]), float(b_range[1])
    if not lo < hi:
        raise InvalidParams(f"Empty b range {b_range}.")

    if np.ptp(F) <= DEGENERATE_TOL * max(1.0, float(np.abs(F).max())):
        c = float(F.mean())
        resid = F - c
        rms = float(np.sqrt(np.mean(resid ** 2)))
        logger.debug("series %s is flat; reporting b = 0", series.label)
        return FitResult(a=0.0, b=0.0, c=c, rms_residual=rms,
                         relative_residual=rms / max(abs(c), np.finfo(float).tiny), flags=(DEGENERATE,))

    def sse(b: float) -> float:
        return _project(L, F, b)[2]

    grid = np.linspace(lo, hi, GRID_POINTS)
    values = np.array([sse(b) for b in grid])
    step = grid[1] - grid[0]

    brackets = []
    for i in range(GRID_POINTS):
        left = values[i - 1] if i > 0 else np.inf
        right = values[i + 1] if i < GRID_POINTS - 1 else np.inf
        if values[i] <= left and values[i] <= right:
            brackets.append((max(lo, grid[i] - step), min(hi, grid[i] + step)))
    for start in STARTS:
        if lo <= start <= hi:
            brackets.append((max(lo, start - 0.5), min(hi, start + 0.5)))

    best_b = float(grid[np.argmin(values)])
    best = float(values.min())
    for a_, b_ in brackets:
        res = minimize_scalar(sse, bounds=(a_, b_), method="bounded", options={"xatol": 1e-10})
        if res.fun < best:
            best, best_b = float(res.fun), float(res.x)

    cond = _condition(L, best_b)
    if cond > MAX_CONDITION:
        raise IllConditioned(f"Normal system at b={best_b:.6g} has condition {cond:.3e}.")

    a, c, s = _project(L, F, best_b)
    rms = float(np.sqrt(s / len(series)))
    rel = float(np.sqrt(s) / np.linalg.norm(F))
    return FitResult(a=a, b=best_b, c=c, rms_residual=rms, relative_residual=rel)
