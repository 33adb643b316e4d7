"""
Position-measurement sampling with a counter-based generator.

Each experiment draws from Philox keyed by (seed, run_index), so any run can
be reproduced on its own and parallel runs never share generator state.
"""

import numpy as np

from ..core.errors import InvalidParams
from ..estimation.fisher import PureState, position_probabilities

_MASK64 = (1 << 64) - 1


def experiment_generator(seed: int, run_index: int = 0) -> np.random.Generator:
    key = ((int(seed) & _MASK64) << 64) | (int(run_index) & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_counts(p: np.ndarray, M: int, seed: int, run_index: int = 0) -> np.ndarray:
    if M < 1:
        raise InvalidParams(f"Need at least one sample, got M={M}.")
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    return experiment_generator(seed, run_index).multinomial(int(M), p / p.sum())


def sample_positions(state: PureState, d: int, M: int, seed: int, run_index: int = 0, decoupled=()) -> np.ndarray:
    """Site counts of M independent position measurements on ``state``."""
    p = position_probabilities(state, d, decoupled).p
    return sample_counts(p, M, seed, run_index)
