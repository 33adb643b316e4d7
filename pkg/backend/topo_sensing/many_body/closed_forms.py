"""Analytic many-body QFI results used as oracles and by the closed-forms command."""

import logging

import numpy as np

from ..core.errors import AtCriticality, InvalidParams, InvalidSize, OddL
from ..hamiltonians.chern import chern_bloch

logger = logging.getLogger(__name__)

CRITICAL_TOL = 1e-9


def _check_even(L: int) -> None:
    if L < 2 or L % 2:
        raise OddL(f"L must be even and >= 2, got {L}.")


# ---------- SSH ----------

def ssh_mode_qfi(lam: float, k) -> np.ndarray:
    """Lower-band QFI at momentum k: sin^2 k / (1 + lambda^2 + 2 lambda cos k)^2."""
    k = np.asarray(k, dtype=float)
    return np.sin(k) ** 2 / (1.0 + lam * lam + 2.0 * lam * np.cos(k)) ** 2


def ssh_tpt_closed_form(L: int) -> float:
    """Many-body QFI at lambda = 1 with the Dirac point dropped: (L^2 - 3L + 2)/12."""
    _check_even(L)
    return (L * L - 3 * L + 2) / 12.0


def ssh_tpt_mode_sum(L: int, form: str = "tan") -> float:
    """
    Direct momentum sum at lambda = 1, either as sum tan^2(pi kappa/L)/4 over
    kappa != L/2, or as sum cot^2(pi kappa/L)/4 over kappa != 0.
    """
    _check_even(L)
    kappa = np.arange(L)
    if form == "tan":
        x = np.pi * kappa[kappa != L // 2] / L
        return float(np.sum(np.tan(x) ** 2) / 4.0)
    if form == "cot":
        x = np.pi * kappa[kappa != 0] / L
        return float(np.sum(1.0 / np.tan(x) ** 2) / 4.0)
    raise InvalidParams(f"form must be 'tan' or 'cot', got '{form}'.")


def ssh_continuum_limit(lam: float) -> float:
    """QFI per site for L -> infinity away from lambda = 1."""
    if lam < 0:
        raise InvalidParams(f"lambda must be >= 0, got {lam}.")
    if abs(lam - 1.0) < CRITICAL_TOL:
        raise AtCriticality("The QFI per site diverges at lambda = 1.")
    if lam < 1.0:
        return 1.0 / (2.0 * (1.0 - lam * lam))
    return 1.0 / (2.0 * (lam ** 4 - lam * lam))


# ---------- Chern insulator ----------

def chern_mode_qfi(kx, ky, lam: float, t1: float = 1.0, t2: float = 1.0) -> np.ndarray:
    """Exact lower-band QFI: t2^2 (Bx^2 + By^2) / |B|^4."""
    b = chern_bloch(kx, ky, lam, t1, t2)
    perp = b[..., 0] ** 2 + b[..., 1] ** 2
    e2 = perp + b[..., 2] ** 2
    return t2 * t2 * perp / e2 ** 2


def chern_tpt_sum(L: int, t1: float = 1.0, t2: float = 1.0) -> float:
    """
    sum over the L x L grid, Dirac point (pi/2, pi/2) excluded, of
    (Bx^2 + By^2) / (4 |B|^4) at lambda = -4.
    """
    if L < 2:
        raise InvalidSize(f"L must be >= 2, got {L}.")
    if t1 == 0:
        return 0.0
    k = 2 * np.pi * np.arange(L) / L
    kx, ky = np.meshgrid(k, k, indexing="ij")
    b = chern_bloch(kx, ky, -4.0, t1, t2)
    perp = b[..., 0] ** 2 + b[..., 1] ** 2
    e4 = (perp + b[..., 2] ** 2) ** 2
    keep = np.ones((L, L), dtype=bool)
    if L % 4 == 0:
        keep[L // 4, L // 4] = False
    return float(np.sum(perp[keep] / (4.0 * e4[keep])))


# ---------- band inversion ----------

def band_inversion_mode_qfi(k: float, lam: float, alpha: float = 1.0, lambda_c: float = 0.0) -> float:
    """
    (d gamma / d lambda)^2 where the lower eigenvector of
    alpha k sigma_x + (lambda - lambda_c) sigma_z is (-sin(gamma/2), cos(gamma/2)),
    gamma = atan2(alpha k, lambda - lambda_c).
    """
    a = alpha * k
    delta = lam - lambda_c
    denom = a * a + delta * delta
    if a == 0:
        return 0.0
    return float((a / denom) ** 2)


def band_inversion_lowest_modes(
    L: int,
    alpha: float = 1.0,
    lam: float = 0.0,
    lambda_c: float = 0.0,
    momentum_scale: float = 1.0,
) -> float:
    """
    QFI of the modes k = 0 and k1 = momentum_scale / L. With the default
    scale, alpha absorbs the 2 pi of the Brillouin grid and the value at
    lambda_c is L^2 / alpha^2.
    """
    if alpha == 0:
        raise InvalidParams("alpha must be nonzero.")
    if L < 1:
        raise InvalidSize(f"L must be >= 1, got {L}.")
    k1 = momentum_scale / L
    return band_inversion_mode_qfi(0.0, lam, alpha, lambda_c) + band_inversion_mode_qfi(k1, lam, alpha, lambda_c)
