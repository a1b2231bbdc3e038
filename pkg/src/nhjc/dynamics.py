"""No-jump conditional evolution on one invariant subspace.

Between quantum jumps the conditional density matrix obeys

    d rho / dt = -i (Heff rho - rho Heff^dag),

and on a block the effective Hamiltonian is similar to

    Heff = shift * I + i Gamma sigma_y,      shift = (2n+1) omega / 2,

with Gamma = sqrt(-D)/2 real in the broken phase and Gamma = i Lambda,
Lambda = sqrt(D)/2, in the unbroken phase.  The Pauli matrices act on the
two-dimensional invariant subspace {|n, up>, |n+1, down>}, so the Bloch
vector below is a coordinate on that subspace, not the lab-frame spin.

States are carried as rho = (weight/2)(I + r . sigma).  Broken phase:
rho(t) = S rho S with S = cosh(Gamma t) I + sinh(Gamma t) sigma_y, the trace
D(t) = cosh(2 Gamma t) + r_y sinh(2 Gamma t) grows and the normalized state
purifies toward the sigma_y = +1 eigenstate (r_y = -1 is the unstable fixed
point).  Unbroken phase: S = exp(i Lambda t sigma_y) is unitary, the weight
stays 1 and the (r_x, r_z) components rotate with period pi / Lambda.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import ExceptionalPointError, ZeroWeightError
from .model import (
    BlockMatrix,
    MatrixRole,
    ModelParams,
    Phase,
    classify_phase,
)

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "BlochState",
    "EffectiveGenerator",
    "effective_generator",
    "evolve_no_jump",
    "survival_probability",
    "normalized_state",
    "propagator",
    "default_time_grid",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

_MIN_WEIGHT = 1e-300


@dataclass(frozen=True)
class BlochState:
    """State rho = (weight/2)(I + r . sigma) on one invariant subspace."""

    r: np.ndarray
    weight: float = 1.0

    def __post_init__(self):
        r = np.array(self.r, dtype=float)
        if r.shape != (3,):
            raise ValueError(f"Bloch vector must have 3 components, got shape {r.shape}")
        if not np.all(np.isfinite(r)):
            raise ValueError("Bloch vector must be finite")
        if float(np.linalg.norm(r)) > 1.0 + 1e-9:
            raise ValueError(f"Bloch vector length {np.linalg.norm(r)} exceeds 1")
        if not math.isfinite(self.weight) or self.weight < 0.0:
            raise ValueError(f"weight must be finite and non-negative, got {self.weight}")
        object.__setattr__(self, "r", r)

    def matrix(self) -> np.ndarray:
        """The 2x2 density matrix (Hermitian, trace = weight)."""
        rx, ry, rz = self.r
        return 0.5 * self.weight * (
            np.eye(2, dtype=complex) + rx * SIGMA_X + ry * SIGMA_Y + rz * SIGMA_Z
        )


@dataclass(frozen=True)
class EffectiveGenerator:
    """Parameters of Heff = shift * I + i gamma_eff sigma_y on block n.

    gamma_eff is real (= Gamma > 0) in the broken phase and purely imaginary
    (= i Lambda, Lambda > 0) in the unbroken phase.
    """

    n: int
    gamma_eff: complex
    shift: float

    @property
    def is_broken(self) -> bool:
        return self.gamma_eff.imag == 0.0

    @property
    def rate(self) -> float:
        """Gamma in the broken phase, Lambda in the unbroken phase."""
        return abs(self.gamma_eff)

    def matrix(self) -> np.ndarray:
        """The 2x2 generator; isospectral to the Hamiltonian block."""
        return self.shift * np.eye(2, dtype=complex) + 1j * self.gamma_eff * SIGMA_Y


def effective_generator(p: ModelParams) -> EffectiveGenerator:
    """Effective no-jump generator of one block.

    Raises ExceptionalPointError inside the tolerance band, where the
    similarity to shift * I + i Gamma sigma_y breaks down.
    """
    label = classify_phase(p)
    if label.value is Phase.EXCEPTIONAL_POINT:
        raise ExceptionalPointError(
            "no-jump generator is defective at the exceptional point"
        )
    shift = 0.5 * (2 * p.n + 1) * p.omega
    d = label.discriminant
    if label.value is Phase.BROKEN:
        gamma_eff = complex(0.5 * math.sqrt(-d), 0.0)
    else:
        gamma_eff = complex(0.0, 0.5 * math.sqrt(d))
    return EffectiveGenerator(p.n, gamma_eff, shift)


def evolve_no_jump(gen: EffectiveGenerator, rho0: BlochState, t: float) -> BlochState:
    """Unnormalized conditional state at time t.

    Broken phase: weight picks up D(t) = cosh(2 Gamma t) + r_y sinh(2 Gamma t)
    and the Bloch vector flows toward (0, 1, 0).  Unbroken phase: weight is
    unchanged and (r_x, r_z) rotate by the angle 2 Lambda t.
    """
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be finite and non-negative, got {t}")
    rx, ry, rz = rho0.r
    if gen.is_broken:
        big_gamma = gen.gamma_eff.real
        ch = math.cosh(2.0 * big_gamma * t)
        sh = math.sinh(2.0 * big_gamma * t)
        d = ch + ry * sh
        return BlochState(
            np.array([rx / d, (sh + ry * ch) / d, rz / d]), rho0.weight * d
        )
    theta = 2.0 * gen.gamma_eff.imag * t
    ct, st = math.cos(theta), math.sin(theta)
    return BlochState(np.array([rx * ct - rz * st, ry, rx * st + rz * ct]), rho0.weight)


def survival_probability(gen: EffectiveGenerator, rho0: BlochState, t: float) -> float:
    """Trace of the evolved unnormalized state: D(t) broken, constant unbroken."""
    if not math.isfinite(t) or t < 0.0:
        raise ValueError(f"t must be finite and non-negative, got {t}")
    if gen.is_broken:
        big_gamma = gen.gamma_eff.real
        ry = float(rho0.r[1])
        return rho0.weight * (
            math.cosh(2.0 * big_gamma * t) + ry * math.sinh(2.0 * big_gamma * t)
        )
    return float(rho0.weight)


def normalized_state(state: BlochState) -> BlochState:
    """Rescale to unit trace; raises ZeroWeightError when nothing is left."""
    if state.weight <= _MIN_WEIGHT:
        raise ZeroWeightError(f"weight {state.weight} is too small to normalize")
    return BlochState(state.r, 1.0)


def propagator(gen: EffectiveGenerator, t: float) -> BlockMatrix:
    """exp(-i Heff t) as a matrix, for cross-checks against the closed form."""
    return BlockMatrix(numerics.expm2(-1j * gen.matrix(), t), MatrixRole.PROPAGATOR)


def default_time_grid(gen: EffectiveGenerator, points: int = 500) -> np.ndarray:
    """Uniform grid on [0, 5 / rate]; rate = Gamma or Lambda as appropriate."""
    if points < 2:
        raise ValueError("need at least 2 grid points")
    return np.linspace(0.0, 5.0 / gen.rate, points)
