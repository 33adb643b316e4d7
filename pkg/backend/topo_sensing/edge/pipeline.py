"""
Edge-state QFI for one (model, lambda, L) point.

Route selection:
  - SSH at lambda_c: the delocalised limit (L^2 - 1)/3;
  - SSH on the topological side: the exact ansatz and the closed form;
  - otherwise (or when ``numeric`` is requested): diagonalise the open chain,
    take the left edge state (topological side / critical point) or the
    top-of-lower-band state (trivial side), and difference it numerically.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from ..hamiltonians.families import ModelFamily, ModelKind
from ..estimation.derivatives import numerical_state_derivative
from ..estimation.fisher import cfi, position_probabilities, qfi_pure
from .closed_form import qfi_phi_z_closed_form, qfi_tpt_limit
from .localization import bulk_selector, edge_selector
from .states import ssh_edge_family

logger = logging.getLogger(__name__)

CRITICAL_TOL = 1e-12


@dataclass(frozen=True)
class EdgeQFI:
    lam: float
    L: int
    closed_form: Optional[float]
    numeric: Optional[float]
    cfi_position: Optional[float]
    method: str

    @property
    def value(self) -> float:
        return self.closed_form if self.closed_form is not None else self.numeric


def _numeric(family: ModelFamily, lam: float, L: int):
    chain = family.build(lam, L)
    critical = abs(lam - family.lambda_c) <= CRITICAL_TOL
    if family.is_topological(lam) or critical:
        selector, method = edge_selector(chain.d), "edge-state"
    else:
        selector, method = bulk_selector, "band-edge-state"
    sd = numerical_state_derivative(family, selector, lam, L)
    pv = position_probabilities(sd, chain.d, chain.decoupled_indices())
    return qfi_pure(sd), cfi(pv), method


def edge_qfi(family: ModelFamily, lam: float, L: int, numeric: bool = False) -> EdgeQFI:
    closed = cfi_pos = num = None
    method = None

    if family.kind == ModelKind.SSH:
        if abs(lam - family.lambda_c) <= CRITICAL_TOL:
            closed = cfi_pos = qfi_tpt_limit(1.0, 0.0, L)
            method = "tpt-limit"
        elif family.is_topological(lam):
            ansatz = ssh_edge_family(lam, L)
            closed = qfi_phi_z_closed_form(ansatz.r, ansatz.dr_dlam, L)
            cfi_pos = cfi(position_probabilities(ansatz.derivative(), 2))
            method = "closed-form"

    if numeric or closed is None:
        num, num_cfi, num_method = _numeric(family, lam, L)
        if closed is None:
            cfi_pos, method = num_cfi, num_method

    logger.debug("edge qfi %s lambda=%g L=%d via %s", family.name, lam, L, method)
    return EdgeQFI(lam=lam, L=L, closed_form=closed, numeric=num, cfi_position=cfi_pos, method=method)
