"""Minimal band-inversion model H_k = alpha k sigma_x + (lambda - lambda_c) sigma_z."""

import numpy as np

from ..core.errors import InvalidParams
from ..core.linalg import SIGMA_X, SIGMA_Z


def band_inversion_bloch(k, lam: float, alpha: float = 1.0, lambda_c: float = 0.0) -> np.ndarray:
    if alpha == 0:
        raise InvalidParams("alpha must be nonzero.")
    k = np.asarray(k, dtype=float)
    return alpha * k[..., None, None] * SIGMA_X + (lam - lambda_c) * SIGMA_Z


def band_inversion_derivative(k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return np.broadcast_to(SIGMA_Z, k.shape + (2, 2)).copy()
