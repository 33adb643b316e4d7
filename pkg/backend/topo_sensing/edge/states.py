"""Edge-state ansatz |phi_z> (x) |u> with an analytic lambda-derivative."""

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..core.errors import InvalidParams, InvalidZ, OutsideTopologicalPhase
from ..estimation.fisher import PureState, StateDerivative
from .closed_form import _check_size, geometric_powers, phi_z_state, qfi_phi_z_complex


@dataclass(frozen=True)
class EdgeAnsatz:
    z: complex
    u: np.ndarray
    L: int
    dz_dlam: complex = 0.0
    du_dlam: np.ndarray = field(default=None)

    def __post_init__(self):
        _check_size(self.L)
        if abs(self.z) >= 1.0:
            raise InvalidZ(f"|z| must be < 1, got {abs(self.z)}.")
        u = np.asarray(self.u, dtype=complex)
        if abs(np.linalg.norm(u) - 1.0) > 1e-12:
            raise InvalidParams("Internal vector u must be normalised.")
        du = np.zeros_like(u) if self.du_dlam is None else np.asarray(self.du_dlam, dtype=complex)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "du_dlam", du)

    @property
    def r(self) -> float:
        return abs(self.z)

    @property
    def theta(self) -> float:
        return float(np.angle(self.z))

    @property
    def dr_dlam(self) -> float:
        if self.r == 0:
            return abs(self.dz_dlam)
        return float((np.conj(self.z) * self.dz_dlam).real / self.r)

    @property
    def dtheta_dlam(self) -> float:
        if self.r == 0:
            return 0.0
        return float((np.conj(self.z) * self.dz_dlam).imag / self.r ** 2)

    def _spatial_derivative(self) -> np.ndarray:
        j = np.arange(self.L)
        mod2 = self.r ** (2 * j)
        norm = mod2.sum()
        # d|z|^{2j}/dlam = 2j r^{2j-1} dr, written without negative powers
        dnorm = np.sum(2 * j[1:] * self.r ** (2 * j[1:] - 1)) * self.dr_dlam
        powers = geometric_powers(self.z, self.L)
        dpowers = np.zeros(self.L, dtype=complex)
        dpowers[1:] = j[1:] * powers[:-1] * self.dz_dlam
        return (dpowers - powers * dnorm / (2 * norm)) / np.sqrt(norm)

    def state(self, decoupled: Sequence[int] = ()) -> PureState:
        """|phi_z> (x) |u>, with the listed flat indices removed."""
        amps = np.kron(phi_z_state(self.z, self.L).amplitudes, self.u)
        return PureState(np.delete(amps, list(decoupled)))

    def derivative(self, decoupled: Sequence[int] = ()) -> StateDerivative:
        phi = phi_z_state(self.z, self.L).amplitudes
        d = np.kron(self._spatial_derivative(), self.u) + np.kron(phi, self.du_dlam)
        return StateDerivative(base=self.state(decoupled), derivative=np.delete(d, list(decoupled)))

    def spatial_qfi(self) -> float:
        return qfi_phi_z_complex(self.r, self.theta, self.dr_dlam, self.dtheta_dlam, self.L)


def ssh_edge_family(lam: float, L: int) -> EdgeAnsatz:
    """Exact left zero mode of the SSH chain with the last b orbital removed: z = -lambda, u = a."""
    if not 0.0 <= lam < 1.0:
        raise OutsideTopologicalPhase(f"SSH edge state requires 0 <= lambda < 1, got {lam}.")
    return EdgeAnsatz(z=-lam, u=np.array([1.0, 0.0]), L=L, dz_dlam=-1.0, du_dlam=np.zeros(2))
