"""
Closed-form QFI of the truncated geometric state

    |phi_z> = sqrt((1 - |z|^2) / (1 - |z|^{2L})) * sum_{j<L} z^j |j>,   |z| < 1

and its delocalised limit |z| -> 1.
"""

import logging

import numpy as np

from ..core.errors import InvalidR, InvalidSize, InvalidZ
from ..estimation.fisher import PureState

logger = logging.getLogger(__name__)

# below this value of L(1 - r^2) the direct formula loses digits to cancellation
_DIRECT_MIN_X = 0.5


def _check_size(L: int) -> None:
    if L < 1:
        raise InvalidSize(f"L must be >= 1, got {L}.")


def _check_r(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise InvalidR(f"r must lie in [0, 1), got {r}.")


def geometric_powers(z: complex, L: int) -> np.ndarray:
    """(1, z, z^2, ..., z^{L-1}) as a complex vector."""
    out = np.ones(L, dtype=complex)
    out[1:] = np.cumprod(np.full(L - 1, complex(z)))
    return out


def phi_z_state(z: complex, L: int) -> PureState:
    _check_size(L)
    if abs(z) >= 1.0:
        raise InvalidZ(f"|z| must be < 1, got {abs(z)}; use qfi_tpt_limit for the delocalised limit.")
    amps = geometric_powers(z, L)
    return PureState.normalized(amps)


def _site_variance(r: float, L: int) -> float:
    # Var(j) under p_j ~ r^{2j}, two-pass
    j = np.arange(L, dtype=float)
    log_w = 2.0 * j * np.log(r)
    w = np.exp(log_w - log_w.max())
    p = w / w.sum()
    mean = np.dot(p, j)
    return float(np.dot(p, (j - mean) ** 2))


def qfi_phi_z_closed_form(r: float, dr_dlam: float, L: int) -> float:
    """
    QFI of |phi_z> for real z = r:

        4 (dr)^2 [1 + r^{4L} - r^{2L-2}(2r^2 + L^2 (1-r^2)^2)] / [(1-r^2)^2 (1-r^{2L})^2]

    Equivalently 4 (dr)^2 Var(j) / r^2 with p_j ~ r^{2j}; that route is used
    when L(1 - r^2) is small.
    """
    _check_r(r)
    _check_size(L)
    if dr_dlam == 0 or L == 1:
        return 0.0

    one_m = 1.0 - r * r
    if L * one_m > _DIRECT_MIN_X:
        r2L = r ** (2 * L)
        num = 1.0 + r2L * r2L - r ** (2 * L - 2) * (2.0 * r * r + L * L * one_m * one_m)
        den = one_m * one_m * (1.0 - r2L) ** 2
        return float(4.0 * dr_dlam ** 2 * num / den)
    return float(4.0 * dr_dlam ** 2 * _site_variance(r, L) / (r * r))


def qfi_phi_z_complex(r: float, theta: float, dr_dlam: float, dtheta_dlam: float, L: int) -> float:
    """
    QFI of |phi_z> with z = r e^{i theta}.

    The metric is diagonal in (r, theta) with F_tt = r^2 F_rr, so
    F = F_rr [(dr)^2 + r^2 (dtheta)^2]; ``theta`` itself drops out.
    """
    _check_r(r)
    f_rr = qfi_phi_z_closed_form(r, 1.0, L)
    return float(f_rr * (dr_dlam ** 2 + r * r * dtheta_dlam ** 2))


def qfi_tpt_limit(dr_dlam: float, dtheta_dlam: float, L: int) -> float:
    """|z| -> 1 limit: (L^2 - 1)[(dr)^2 + (dtheta)^2] / 3."""
    _check_size(L)
    return float((L * L - 1) * (dr_dlam ** 2 + dtheta_dlam ** 2) / 3.0)


def position_measurement_prefactor(r: float, dr_dlam: float, dtheta_dlam: float) -> float:
    """QFI / CFI of the site-position measurement on |phi_z>; independent of L."""
    if dr_dlam == 0:
        return 1.0 if dtheta_dlam == 0 or r == 0 else float("inf")
    return float(1.0 + (r * dtheta_dlam / dr_dlam) ** 2)
