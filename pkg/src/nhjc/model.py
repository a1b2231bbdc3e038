"""Invariant-subspace blocks of a non-Hermitian Jaynes-Cummings model.

The Hamiltonian

    H = (epsilon/2) sigma_z + omega a^dag a + gamma (sigma_+ a - sigma_- a^dag)

conserves the total excitation number, so apart from the decoupled ground
state |0, down> the Hilbert space splits into two-dimensional invariant
subspaces spanned by |n, up> and |n+1, down>.  On the (n+1)-th subspace the
Hamiltonian restricts to the 2x2 block

    H_{n+1} = [[epsilon/2 + n omega,       gamma sqrt(n+1)      ],
               [-gamma sqrt(n+1),  -epsilon/2 + (n+1) omega]]

whose spectrum is real for (omega - epsilon)^2 > 4 gamma^2 (n+1), a complex
conjugate pair for the opposite sign, and defective on the boundary (the
exceptional point).  Everything in this package works on these blocks, where
all quantities are available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotHermitianError

__all__ = [
    "Branch",
    "Phase",
    "PhaseLabel",
    "MatrixRole",
    "ModelParams",
    "BlockMatrix",
    "Spectrum",
    "build_block",
    "build_block_dagger",
    "sqrt_discriminant",
    "spectrum_closed_form",
    "classify_phase",
    "critical_gamma",
    "ground_state_energy",
]


class Branch(Enum):
    """Eigenvalue branch: I carries the '+' root, II the '-' root."""

    I = "I"
    II = "II"


class Phase(Enum):
    """Spectral phase of one block."""

    UNBROKEN = "Unbroken"
    BROKEN = "Broken"
    EXCEPTIONAL_POINT = "ExceptionalPoint"


class MatrixRole(Enum):
    """What a 2x2 block stands for; Metric additionally enforces Hermiticity."""

    HAMILTONIAN = "Hamiltonian"
    HAMILTONIAN_DAGGER = "HamiltonianDagger"
    METRIC = "Metric"
    INTERTWINER = "Intertwiner"
    INTERTWINER_INVERSE = "IntertwinerInverse"
    ISOSPECTRAL = "Isospectral"
    PROJECTOR = "Projector"
    PROPAGATOR = "Propagator"


@dataclass(frozen=True)
class ModelParams:
    """Parameters of one invariant subspace.

    Parameters
    ----------
    omega : float
        Oscillator frequency (hbar = 1).
    epsilon : float
        Two-level splitting.
    gamma : float
        Spin-oscillator coupling.  Negative values are allowed; every
        phase-related quantity depends on gamma**2 only.
    n : int
        Block index; the block spans |n, up> and |n+1, down>.
    """

    omega: float
    epsilon: float
    gamma: float
    n: int = 0

    def __post_init__(self):
        for name in ("omega", "epsilon", "gamma"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
        if isinstance(self.n, bool) or self.n != int(self.n) or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")

    @property
    def delta(self) -> float:
        """Effective coupling delta_{n+1} = sqrt(n+1) * gamma."""
        return math.sqrt(self.n + 1) * self.gamma

    @property
    def discriminant(self) -> float:
        """(omega - epsilon)**2 - 4 gamma**2 (n+1); its sign selects the phase."""
        return (self.omega - self.epsilon) ** 2 - 4.0 * self.gamma**2 * (self.n + 1)

    @property
    def ep_tolerance(self) -> float:
        """Half-width of the relative tolerance band around the exceptional point."""
        return 1e-10 * max(
            1.0, (self.omega - self.epsilon) ** 2, 4.0 * self.gamma**2 * (self.n + 1)
        )


_METRIC_HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class BlockMatrix:
    """A 2x2 complex matrix tagged with the role it plays."""

    entries: np.ndarray
    role: MatrixRole

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        if m.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("matrix entries must be finite")
        if self.role is MatrixRole.METRIC:
            scale = float(np.linalg.norm(m))
            if np.max(np.abs(m - m.conj().T)) > _METRIC_HERMITICITY_TOL * max(scale, 1.0):
                raise NotHermitianError("metric block is not Hermitian")
        object.__setattr__(self, "entries", m)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue pair of one block."""

    eigenvalue_I: complex
    eigenvalue_II: complex

    def branch(self, which: Branch) -> complex:
        return self.eigenvalue_I if which is Branch.I else self.eigenvalue_II


@dataclass(frozen=True)
class PhaseLabel:
    """Phase classification together with the discriminant that produced it."""

    value: Phase
    discriminant: float


def build_block(p: ModelParams) -> BlockMatrix:
    """Hamiltonian block on the (n+1)-th invariant subspace."""
    d = math.sqrt(p.n + 1) * p.gamma
    m = np.array(
        [
            [0.5 * p.epsilon + p.n * p.omega, d],
            [-d, -0.5 * p.epsilon + (p.n + 1) * p.omega],
        ],
        dtype=complex,
    )
    return BlockMatrix(m, MatrixRole.HAMILTONIAN)


def build_block_dagger(p: ModelParams) -> BlockMatrix:
    """Hermitian conjugate of the Hamiltonian block."""
    m = build_block(p).entries.conj().T.copy()
    return BlockMatrix(m, MatrixRole.HAMILTONIAN_DAGGER)


def sqrt_discriminant(p: ModelParams) -> complex:
    """Square root of the discriminant, +i sqrt(|D|) on the broken side."""
    d = p.discriminant
    if d >= 0.0:
        return complex(math.sqrt(d), 0.0)
    return complex(0.0, math.sqrt(-d))


def spectrum_closed_form(p: ModelParams) -> Spectrum:
    """Closed-form block eigenvalues (2n+1) omega / 2 +- sqrt(D) / 2.

    Branch I is the '+' root.  In the broken phase the pair is exactly
    complex conjugate with Im(eigenvalue_I) > 0.
    """
    center = 0.5 * (2 * p.n + 1) * p.omega
    half_root = 0.5 * sqrt_discriminant(p)
    return Spectrum(center + half_root, center - half_root)


def classify_phase(p: ModelParams) -> PhaseLabel:
    """Label the spectral phase, with a relative tolerance band at the EP."""
    d = p.discriminant
    if abs(d) <= p.ep_tolerance:
        return PhaseLabel(Phase.EXCEPTIONAL_POINT, d)
    return PhaseLabel(Phase.UNBROKEN if d > 0.0 else Phase.BROKEN, d)


def critical_gamma(p: ModelParams) -> float:
    """Coupling magnitude at which this block hits its exceptional point.

    Depends on (omega, epsilon, n) only; p.gamma is ignored.
    """
    return abs(p.omega - p.epsilon) / (2.0 * math.sqrt(p.n + 1))


def ground_state_energy(p: ModelParams) -> float:
    """Energy -epsilon/2 of the decoupled global ground state |0, down>."""
    return -0.5 * p.epsilon
