"""Spin-oscillator entanglement entropy on one invariant subspace.

A right eigenvector of a block, Dirac-normalized, reads

    |psi_i> = (|n, up> + alpha_i |n+1, down>) / sqrt(1 + |alpha_i|^2),

so the reduced spin (or, identically, oscillator) density matrix has
eigenvalues lambda = 1 / (1 + |alpha_i|^2) and 1 - lambda, and the
entanglement entropy is the binary entropy S = -lambda ln lambda
- (1 - lambda) ln(1 - lambda) in nats.

In the broken phase |alpha|^2 = 1 identically, for any (omega, epsilon, n):
both branches sit at the maximum S = ln 2.  On the unbroken side S grows
from 0 at gamma -> 0 to ln 2 at the exceptional point, which is also the
limit value returned exactly at the EP.  Left eigenvectors give the same
reduced spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .biortho import eigenvector_ratios
from .errors import ZeroCouplingError
from .model import Branch, ModelParams

__all__ = [
    "LN2",
    "ReducedSpectrum",
    "EntropyPoint",
    "alpha_coefficient",
    "reduced_spectrum",
    "entanglement_entropy",
    "entropy_curve",
]

LN2 = math.log(2.0)


@dataclass(frozen=True)
class ReducedSpectrum:
    """Eigenvalue pair {lam, complement} of a reduced density matrix.

    lam + complement == 1.0 exactly (complement is computed as 1 - lam).
    """

    lam: float
    complement: float
    branch: Branch


@dataclass(frozen=True)
class EntropyPoint:
    """Entropy of both branches at one value of delta^2 = (n+1) gamma^2."""

    delta_sq: float
    S_I: float
    S_II: float


def alpha_coefficient(p: ModelParams, branch: Branch) -> complex:
    """Eigenvector coefficient alpha = [(omega-eps) +- sqrt(D)] / (2 gamma sqrt(n+1)).

    Well defined at the exceptional point (both branches give the same
    ratio); raises ZeroCouplingError at gamma = 0 where the ratio loses
    meaning.
    """
    if p.gamma == 0.0:
        raise ZeroCouplingError("alpha is undefined at gamma = 0 (decoupled block)")
    a_one, a_two = eigenvector_ratios(p)
    return a_one if branch is Branch.I else a_two


def _ratio_squared(p: ModelParams, branch: Branch, side: str) -> float:
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    a = alpha_coefficient(p, branch)
    if side == "left":
        a = -a.conjugate()  # left coefficient; same modulus by construction
    return abs(a) ** 2


def reduced_spectrum(
    p: ModelParams, branch: Branch, side: str = "right"
) -> ReducedSpectrum:
    """Reduced spin spectrum {lam, 1 - lam} of one eigenvector.

    gamma = 0 returns the decoupled product-state limit lam = 1.  The left
    and right eigenvectors of a branch share the same reduced spectrum.
    """
    if p.gamma == 0.0:
        return ReducedSpectrum(1.0, 0.0, branch)
    a2 = _ratio_squared(p, branch, side)
    lam = 1.0 / (1.0 + a2)
    return ReducedSpectrum(lam, 1.0 - lam, branch)


def _binary_entropy_from_ratio(a2: float) -> float:
    # entropy of the pair {1, a2} / (1 + a2); the complement is formed as a
    # ratio rather than 1 - lam, so tiny a2 keeps full relative accuracy
    if a2 == 0.0 or math.isinf(a2):
        return 0.0
    lam = 1.0 / (1.0 + a2)
    comp = a2 / (1.0 + a2)
    return -(lam * math.log(lam) + comp * math.log(comp))


def entanglement_entropy(p: ModelParams, branch: Branch) -> float:
    """Entanglement entropy of one eigenvector branch, in nats.

    ln 2 exactly throughout the broken phase (|alpha|^2 = 1) and at the
    exceptional point; 0 in the gamma -> 0 limit (returned at gamma = 0).
    """
    if p.gamma == 0.0:
        return 0.0
    return _binary_entropy_from_ratio(_ratio_squared(p, branch, "right"))


def entropy_curve(p: ModelParams, delta_sq_values: Iterable[float]) -> list[EntropyPoint]:
    """Entropy of both branches along a grid of delta^2 = (n+1) gamma^2.

    omega, epsilon and n are taken from `p`; gamma is solved from each
    delta^2 value, which must be non-negative.
    """
    points = []
    for delta_sq in delta_sq_values:
        delta_sq = float(delta_sq)
        if delta_sq < 0.0 or not math.isfinite(delta_sq):
            raise ValueError(f"delta^2 must be finite and non-negative, got {delta_sq}")
        q = ModelParams(p.omega, p.epsilon, math.sqrt(delta_sq / (p.n + 1)), p.n)
        points.append(
            EntropyPoint(
                delta_sq,
                entanglement_entropy(q, Branch.I),
                entanglement_entropy(q, Branch.II),
            )
        )
    return points
