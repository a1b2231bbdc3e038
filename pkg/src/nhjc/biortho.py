"""Biorthogonal eigensystems, metric operators, intertwiners, projectors.

A non-Hermitian block has distinct right and left eigenvectors,

    H |R_i> = R_i |R_i>,      H^dag |L_i> = conj(R_i) |L_i>,

which become a biorthogonal system once normalized to <L_i|R_j> = delta_ij.
That condition still leaves a scale freedom per pair; here it is fixed
symmetrically, ||L_i|| = ||R_i||, which makes the positive operator

    G = sum_i |L_i><L_i|

well defined.  In the unbroken phase G is a genuine metric: H is
pseudo-Hermitian, H = G^-1 H^dag G, the intertwiner g = sqrt(G) maps H to a
Hermitian isospectral partner h = g H g^-1, and <psi|G|psi> is conserved
under exp(-iHt).  In the broken phase the same construction yields a
positive G that is no longer a similarity to a Hermitian problem; h-tilde
stays non-Hermitian and G-norms grow.  ||G|| diverges as |delta - delta_c|
to the power -1/2 on both sides of the exceptional point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import numerics
from .errors import ExceptionalPointError, WrongPhaseError
from .model import (
    BlockMatrix,
    MatrixRole,
    ModelParams,
    Phase,
    PhaseLabel,
    Spectrum,
    build_block,
    classify_phase,
    critical_gamma,
    spectrum_closed_form,
    sqrt_discriminant,
)

__all__ = [
    "Normalization",
    "BiorthoSystem",
    "MetricBundle",
    "eigenvector_ratios",
    "eigensystem",
    "metric",
    "intertwiner",
    "projectors",
    "pseudo_hermiticity_residual",
    "metric_divergence_exponent",
]


class Normalization(Enum):
    """Eigenvector normalization conventions."""

    BIORTHOGONAL = "Biorthogonal"
    DIRAC_RIGHT = "DiracRight"
    RAW = "Raw"


@dataclass(frozen=True)
class BiorthoSystem:
    """Paired left/right eigenvectors of one block."""

    right_I: np.ndarray
    right_II: np.ndarray
    left_I: np.ndarray
    left_II: np.ndarray
    eigenvalues: Spectrum
    normalization: Normalization

    def pairs(self):
        return ((self.right_I, self.left_I), (self.right_II, self.left_II))


@dataclass(frozen=True)
class MetricBundle:
    """Metric G, intertwiner g = sqrt(G), its inverse, and h = g H g^-1."""

    G: BlockMatrix
    g: BlockMatrix
    g_inv: BlockMatrix
    h: BlockMatrix
    phase: PhaseLabel


def eigenvector_ratios(p: ModelParams) -> tuple[complex, complex]:
    """Second-over-first component ratios of the two right eigenvectors.

    The ratios are the roots of delta a^2 + (epsilon - omega) a + delta = 0,
    i.e. a = [(omega - epsilon) +- sqrt(D)] / (2 gamma sqrt(n+1)), and their
    product is exactly 1.  On the unbroken side the nearly-cancelling branch
    is recovered from that product so both ratios keep full relative
    accuracy down to gamma -> 0.

    Requires gamma != 0.
    """
    if p.gamma == 0.0:
        raise ZeroDivisionError("eigenvector ratios are undefined at gamma = 0")
    b = p.omega - p.epsilon
    two_delta = 2.0 * math.sqrt(p.n + 1) * p.gamma
    s = sqrt_discriminant(p)
    if s.imag != 0.0:
        # broken phase: |b + s| = |b - s|, no cancellation either way
        return (b + s) / two_delta, (b - s) / two_delta
    if b >= 0.0:
        a_one = (b + s.real) / two_delta
        return a_one, 1.0 / a_one
    a_two = (b - s.real) / two_delta
    return 1.0 / a_two, a_two


def eigensystem(
    p: ModelParams, normalization: Normalization = Normalization.BIORTHOGONAL
) -> BiorthoSystem:
    """Left/right eigenvector pairs of one block.

    Pairing follows the eigenvalues: the left partner of branch i is the
    eigenvector of H^dag with eigenvalue conj(R_i), which guarantees
    <L_i|R_j> = 0 off the diagonal.  Normalizations:

    - Raw: right (1, a_i), left (1, -conj(a_i)); first components +1.
    - DiracRight: every vector scaled to unit Dirac norm.
    - Biorthogonal: <L_i|R_j> = delta_ij with the symmetric convention
      ||L_i|| = ||R_i||; the relative phase lands on the right vector.

    Raises
    ------
    ExceptionalPointError
        Inside the tolerance band, where the block is defective.
    """
    label = classify_phase(p)
    if label.value is Phase.EXCEPTIONAL_POINT:
        raise ExceptionalPointError(
            f"eigenvectors coalesce near the exceptional point (discriminant {label.discriminant:.3e})"
        )
    eigenvalues = spectrum_closed_form(p)

    if p.gamma == 0.0:
        # decoupled block: the Hamiltonian is already diagonal
        e1 = np.array([1.0 + 0.0j, 0.0 + 0.0j])
        e2 = np.array([0.0 + 0.0j, 1.0 + 0.0j])
        if p.epsilon > p.omega:
            rights = [e1, e2]
        else:
            rights = [e2, e1]
        lefts = [v.copy() for v in rights]
        return BiorthoSystem(
            rights[0], rights[1], lefts[0], lefts[1], eigenvalues, normalization
        )

    a_one, a_two = eigenvector_ratios(p)
    rights = [np.array([1.0, a], dtype=complex) for a in (a_one, a_two)]
    lefts = [np.array([1.0, -np.conj(a)], dtype=complex) for a in (a_one, a_two)]

    if normalization is Normalization.DIRAC_RIGHT:
        rights = [v / np.linalg.norm(v) for v in rights]
        lefts = [v / np.linalg.norm(v) for v in lefts]
    elif normalization is Normalization.BIORTHOGONAL:
        for i in range(2):
            c = complex(np.vdot(lefts[i], rights[i]))  # = 1 - a_i^2, never 0 off the EP
            scale = 1.0 / math.sqrt(abs(c))
            lefts[i] = lefts[i] * scale
            rights[i] = rights[i] * (c.conjugate() / abs(c)) * scale
    return BiorthoSystem(
        rights[0], rights[1], lefts[0], lefts[1], eigenvalues, normalization
    )


def metric(p: ModelParams) -> BlockMatrix:
    """Metric G = sum_i |L_i><L_i| from the biorthogonally normalized lefts.

    Hermitian positive definite in both phases; at gamma = 0 it reduces to
    the identity.  Diverges like |delta - delta_c|**-0.5 toward the EP.
    """
    system = eigensystem(p, Normalization.BIORTHOGONAL)
    g = np.outer(system.left_I, system.left_I.conj()) + np.outer(
        system.left_II, system.left_II.conj()
    )
    return BlockMatrix(0.5 * (g + g.conj().T), MatrixRole.METRIC)


def intertwiner(p: ModelParams) -> MetricBundle:
    """Metric bundle (G, g, g^-1, h) with g = sqrt(G) and h = g H g^-1.

    h is Hermitian in the unbroken phase and non-Hermitian (yet isospectral
    to H) in the broken phase.
    """
    label = classify_phase(p)
    big_g = metric(p)
    small_g = numerics.sqrt_hpd(big_g.entries)
    small_g_inv = numerics.inv2(small_g)
    h = small_g @ build_block(p).entries @ small_g_inv
    return MetricBundle(
        big_g,
        BlockMatrix(small_g, MatrixRole.INTERTWINER),
        BlockMatrix(small_g_inv, MatrixRole.INTERTWINER_INVERSE),
        BlockMatrix(h, MatrixRole.ISOSPECTRAL),
        label,
    )


def projectors(p: ModelParams) -> tuple[BlockMatrix, BlockMatrix]:
    """Spectral projectors rho_i = |R_i><L_i| / <L_i|R_i>.

    Trace one, idempotent, mutually annihilating, and complete; independent
    of the normalization convention.
    """
    system = eigensystem(p, Normalization.BIORTHOGONAL)
    out = []
    for right, left in system.pairs():
        c = complex(np.vdot(left, right))
        out.append(BlockMatrix(np.outer(right, left.conj()) / c, MatrixRole.PROJECTOR))
    return out[0], out[1]


def pseudo_hermiticity_residual(p: ModelParams) -> float:
    """Frobenius norm of H - G^-1 H^dag G; ~1e-14 in the unbroken phase.

    Raises WrongPhaseError in the broken phase, where G intertwines H with
    the wrong sign structure and the residual is O(1) by construction.
    """
    label = classify_phase(p)
    if label.value is Phase.EXCEPTIONAL_POINT:
        raise ExceptionalPointError("metric is singular at the exceptional point")
    if label.value is Phase.BROKEN:
        raise WrongPhaseError("H is pseudo-Hermitian under G only in the unbroken phase")
    big_g = metric(p).entries
    h = build_block(p).entries
    return float(np.linalg.norm(h - numerics.inv2(big_g) @ h.conj().T @ big_g))


def metric_divergence_exponent(
    p: ModelParams,
    side: str = "below",
    points: int = 20,
    window: tuple[float, float] = (1e-4, 1e-1),
) -> float:
    """Log-log slope of ||G||_F against |delta - delta_c| near the EP.

    Samples `points` geometrically spaced offsets inside `window` on the
    requested side of delta_c = |omega - epsilon| / 2 and fits an OLS slope;
    the divergence exponent is -1/2 on both sides.
    """
    if side not in ("below", "above"):
        raise ValueError(f"side must be 'below' or 'above', got {side!r}")
    delta_c = math.sqrt(p.n + 1) * critical_gamma(p)
    sign = -1.0 if side == "below" else 1.0
    offsets = np.geomspace(window[0], window[1], points)
    norms = []
    for x in offsets:
        delta = delta_c + sign * x
        q = ModelParams(p.omega, p.epsilon, delta / math.sqrt(p.n + 1), p.n)
        norms.append(float(np.linalg.norm(metric(q).entries)))
    return numerics.loglog_slope(offsets, norms)
