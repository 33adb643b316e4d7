"""
Model families: a named rule lambda -> Hamiltonian plus the fixed couplings.

Families are addressed by string ids ("ssh", "chern-wire", "chern-bloch",
"band-inversion") from the CLI and config files; ``custom_family`` wraps
arbitrary builders for tests and ad-hoc studies.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np

from ..core.config import settings
from ..core.errors import InvalidParams
from ..core.linalg import pauli_matrix
from .band_inversion import band_inversion_bloch, band_inversion_derivative
from .block import BlockHamiltonian1D, bloch_matrix
from .chern import build_chern_wire, chern_bloch, chern_bloch_derivative
from .ssh import build_ssh, ssh_bloch, ssh_bloch_derivative

logger = logging.getLogger(__name__)


class ModelKind(str, Enum):
    SSH = "ssh"
    CHERN_WIRE = "chern-wire"
    CHERN_BLOCH = "chern-bloch"
    BAND_INVERSION = "band-inversion"
    CUSTOM = "custom"


def wrap_momentum(k):
    """Map momenta into [-pi, pi)."""
    return np.mod(np.asarray(k, dtype=float) + np.pi, 2 * np.pi) - np.pi


@dataclass(frozen=True)
class ModelFamily:
    kind: ModelKind
    params: Dict[str, float]
    dimension: int
    lambda_c: float
    orbitals: int = 2
    builder: Optional[Callable[[float, int], BlockHamiltonian1D]] = field(default=None, repr=False)
    bloch_fn: Optional[Callable[[float, np.ndarray], np.ndarray]] = field(default=None, repr=False)
    dbloch_fn: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    topological_fn: Optional[Callable[[float], bool]] = field(default=None, repr=False)

    @property
    def name(self) -> str:
        return self.kind.value

    def build(self, lam: float, L: int) -> BlockHamiltonian1D:
        if self.builder is None:
            raise InvalidParams(f"Model '{self.name}' has no open-chain form.")
        return self.builder(lam, L)

    def bloch(self, lam: float, ks: np.ndarray) -> np.ndarray:
        """Stack of Bloch matrices, shape (n, d, d) for ``ks`` of shape (n,) or (n, 2)."""
        if self.bloch_fn is None:
            raise InvalidParams(f"Model '{self.name}' has no Bloch form.")
        return self.bloch_fn(lam, np.asarray(ks, dtype=float))

    def bloch_derivative(self, lam: float, ks: np.ndarray) -> np.ndarray:
        ks = np.asarray(ks, dtype=float)
        if self.dbloch_fn is not None:
            return self.dbloch_fn(ks)
        h = settings.FD_STEP * max(1.0, abs(lam))
        return (self.bloch(lam + h, ks) - self.bloch(lam - h, ks)) / (2 * h)

    def momentum_grid(self, L: int) -> np.ndarray:
        """k = 2 pi kappa / L, kappa in [0, L-1], wrapped to [-pi, pi); (L*L, 2) in 2D."""
        k = wrap_momentum(2 * np.pi * np.arange(L) / L)
        if self.dimension == 1:
            return k
        kx, ky = np.meshgrid(k, k, indexing="ij")
        return np.stack([kx.ravel(), ky.ravel()], axis=-1)

    def is_topological(self, lam: float) -> bool:
        if self.topological_fn is None:
            return False
        return bool(self.topological_fn(lam))


# ---------- factories ----------

def ssh_family(j2: float = None, decouple_last_b: bool = True, periodic: bool = False) -> ModelFamily:
    j2 = settings.DEFAULT_J2 if j2 is None else j2
    return ModelFamily(
        kind=ModelKind.SSH,
        params={"j2": j2},
        dimension=1,
        lambda_c=1.0,
        builder=lambda lam, L: build_ssh(lam, L, decouple_last_b=decouple_last_b, periodic=periodic, j2=j2),
        bloch_fn=lambda lam, ks: ssh_bloch(lam, ks, j2),
        dbloch_fn=lambda ks: ssh_bloch_derivative(ks, j2),
        topological_fn=lambda lam: 0 <= lam < 1,
    )


def chern_wire_family(kx: float = np.pi / 2, t1: float = None, t2: float = None) -> ModelFamily:
    t1 = settings.DEFAULT_T1 if t1 is None else t1
    t2 = settings.DEFAULT_T2 if t2 is None else t2
    shift = 2 * np.sin(kx)
    return ModelFamily(
        kind=ModelKind.CHERN_WIRE,
        params={"kx": kx, "t1": t1, "t2": t2},
        dimension=1,
        # wire gap closes where |lambda + 2 sin kx| = 2
        lambda_c=-2.0 - shift,
        builder=lambda lam, L: build_chern_wire(kx, lam, t1, t2, L),
        bloch_fn=lambda lam, ks: pauli_matrix(chern_bloch(kx, ks, lam, t1, t2)),
        dbloch_fn=lambda ks: chern_bloch_derivative(ks.shape, t2),
        topological_fn=lambda lam: abs(lam + shift) < 2,
    )


def chern_bloch_family(t1: float = None, t2: float = None) -> ModelFamily:
    t1 = settings.DEFAULT_T1 if t1 is None else t1
    t2 = settings.DEFAULT_T2 if t2 is None else t2
    return ModelFamily(
        kind=ModelKind.CHERN_BLOCH,
        params={"t1": t1, "t2": t2},
        dimension=2,
        lambda_c=-4.0,
        bloch_fn=lambda lam, ks: pauli_matrix(chern_bloch(ks[..., 0], ks[..., 1], lam, t1, t2)),
        dbloch_fn=lambda ks: chern_bloch_derivative(ks.shape[:-1], t2),
        topological_fn=lambda lam: 0 < abs(lam) < 4,
    )


def band_inversion_family(alpha: float = 1.0, lambda_c: float = 0.0) -> ModelFamily:
    if alpha == 0:
        raise InvalidParams("alpha must be nonzero.")
    return ModelFamily(
        kind=ModelKind.BAND_INVERSION,
        params={"alpha": alpha, "lambda_c": lambda_c},
        dimension=1,
        lambda_c=lambda_c,
        bloch_fn=lambda lam, ks: band_inversion_bloch(ks, lam, alpha, lambda_c),
        dbloch_fn=band_inversion_derivative,
    )


def custom_family(
    builder: Callable[[float, int], BlockHamiltonian1D],
    lambda_c: float = float("nan"),
    orbitals: int = 2,
    topological: Optional[Callable[[float], bool]] = None,
) -> ModelFamily:
    """Family from an arbitrary builder; the Bloch form is taken from its blocks."""
    return ModelFamily(
        kind=ModelKind.CUSTOM,
        params={},
        dimension=1,
        lambda_c=lambda_c,
        orbitals=orbitals,
        builder=builder,
        bloch_fn=lambda lam, ks: np.stack([bloch_matrix(builder(lam, 2).hop_blocks, k) for k in np.atleast_1d(ks)]),
        topological_fn=topological,
    )


_FACTORIES = {
    ModelKind.SSH: ssh_family,
    ModelKind.CHERN_WIRE: chern_wire_family,
    ModelKind.CHERN_BLOCH: chern_bloch_family,
    ModelKind.BAND_INVERSION: band_inversion_family,
}


def get_family(name: str, **params) -> ModelFamily:
    """Look up a family by its string id; ``params`` go to the factory."""
    try:
        kind = ModelKind(name)
    except ValueError:
        raise InvalidParams(f"Unknown model '{name}'. Choose from {[k.value for k in _FACTORIES]}.") from None
    if kind not in _FACTORIES:
        raise InvalidParams(f"Model '{name}' cannot be built by name.")
    clean = {k: v for k, v in params.items() if v is not None}
    logger.debug("Building family %s with %s", name, clean)
    return _FACTORIES[kind](**clean)
