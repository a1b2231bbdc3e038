"""Brute-force 2x2 linear algebra used as an independent cross-check.

Everything here is restricted to 2x2 complex matrices and solved in closed
form (characteristic polynomial, spectral decomposition, trace/traceless
exponential splitting).  None of it knows about the physical model, and none
of it calls a library eigensolver, so it shares no code path with the
model-specific formulas it is used to verify.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientSamplesError,
    NonPositiveDataError,
    NotHermitianError,
    NotPositiveDefiniteError,
)

__all__ = [
    "EigenPair2",
    "eig2",
    "sqrt_hpd",
    "expm2",
    "inv2",
    "loglog_slope",
    "canonical_phase",
]

_EYE = np.eye(2, dtype=complex)

# Defectiveness threshold: an eigenvalue collision alone is not enough (a
# scalar matrix is degenerate but diagonalizable); for a double root the
# matrix is defective exactly when m - lambda I is nonzero.
_GAP_TOL = 1e-10


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def canonical_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a global phase so the largest-modulus component is real positive."""
    j = int(np.argmax(np.abs(v)))
    a = complex(v[j])
    if a == 0.0:
        return v.copy()
    return v * (a.conjugate() / abs(a))


def _char_roots(m: np.ndarray) -> tuple[complex, complex]:
    # lambda^2 + b lambda + c with b = -tr, c = det; the root q is formed
    # from the non-cancelling combination, the other follows from Viete.
    b = -(m[0, 0] + m[1, 1])
    c = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    s = cmath.sqrt(b * b - 4.0 * c)
    if (b.conjugate() * s).real < 0.0:
        s = -s
    q = -0.5 * (b + s)
    if q == 0.0:
        return 0.0 + 0.0j, -b
    return q, c / q


def _null_vector(a: np.ndarray) -> np.ndarray:
    """Unit null vector of a numerically singular 2x2 matrix.

    Uses the better-conditioned row; for the zero matrix any vector works
    and e_1 is returned.
    """
    n0 = abs(a[0, 0]) ** 2 + abs(a[0, 1]) ** 2
    n1 = abs(a[1, 0]) ** 2 + abs(a[1, 1]) ** 2
    if n0 == 0.0 and n1 == 0.0:
        return np.array([1.0 + 0.0j, 0.0 + 0.0j])
    row = a[0] if n0 >= n1 else a[1]
    v = np.array([-row[1], row[0]])
    v /= math.sqrt(abs(v[0]) ** 2 + abs(v[1]) ** 2)
    return canonical_phase(v)


@dataclass(frozen=True)
class EigenPair2:
    """Eigensystem of a 2x2 matrix.

    right_vectors[i] solves M v = values[i] v; left_vectors[i] solves
    M^dag l = conj(values[i]) l, i.e. the left partner of the same branch
    under the biorthogonal pairing.  All vectors have unit Dirac norm and
    canonical phase.  `defective` marks a genuine eigenvector collapse.
    """

    values: tuple[complex, complex]
    right_vectors: tuple[np.ndarray, np.ndarray]
    left_vectors: tuple[np.ndarray, np.ndarray]
    defective: bool


def eig2(m) -> EigenPair2:
    """Full eigensystem from the characteristic polynomial and null spaces."""
    m = _as_matrix(m)
    l1, l2 = _char_roots(m)
    scale = float(np.linalg.norm(m))
    mh = m.conj().T
    rights, lefts = [], []
    for lam in (l1, l2):
        rights.append(_null_vector(m - lam * _EYE))
        lefts.append(_null_vector(mh - lam.conjugate() * _EYE))
    gap = abs(l1 - l2)
    tol = _GAP_TOL * max(scale, 1.0)
    defective = gap < tol and float(
        np.abs(m - 0.5 * (l1 + l2) * _EYE).max()
    ) > tol
    return EigenPair2(
        (complex(l1), complex(l2)), (rights[0], rights[1]), (lefts[0], lefts[1]), defective
    )


def sqrt_hpd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive-definite 2x2 matrix.

    Computed from the explicit spectral decomposition.  Raises
    NotHermitianError / NotPositiveDefiniteError when the input fails the
    respective precondition.
    """
    m = _as_matrix(m)
    scale = float(np.linalg.norm(m))
    if np.max(np.abs(m - m.conj().T)) > 1e-10 * max(scale, 1.0):
        raise NotHermitianError("matrix is not Hermitian")
    a = m[0, 0].real
    d = m[1, 1].real
    b = 0.5 * (m[0, 1] + m[1, 0].conjugate())  # hermitize roundoff
    mean = 0.5 * (a + d)
    spread = math.hypot(0.5 * (a - d), abs(b))
    lo, hi = mean - spread, mean + spread
    if lo <= 0.0:
        raise NotPositiveDefiniteError(f"smallest eigenvalue {lo} is not positive")
    if spread <= 1e-15 * max(abs(mean), 1.0):
        return math.sqrt(mean) * _EYE.copy()
    herm = np.array([[a, b], [b.conjugate(), d]], dtype=complex)
    v = _null_vector(herm - hi * _EYE)
    proj = np.outer(v, v.conj())
    root = math.sqrt(hi) * proj + math.sqrt(lo) * (_EYE - proj)
    return 0.5 * (root + root.conj().T)


def expm2(m, t: float = 1.0) -> np.ndarray:
    """exp(M t) through the trace/traceless splitting.

    With N = M - (tr M / 2) I one has N^2 = q^2 I for q^2 = -det N, hence
    exp(N t) = cosh(q t) I + sinh(q t)/q N exactly; a short Taylor series
    takes over below |q t| = 1e-6 where sinh(q t)/q loses accuracy.
    """
    m = _as_matrix(m)
    half_tr = 0.5 * (m[0, 0] + m[1, 1])
    n = m - half_tr * _EYE
    q = cmath.sqrt(-(n[0, 0] * n[1, 1] - n[0, 1] * n[1, 0]))
    z = q * t
    if abs(z) < 1e-6:
        core = _EYE + n * t + (n @ n) * (0.5 * t * t)
    else:
        core = cmath.cosh(z) * _EYE + (cmath.sinh(z) / q) * n
    return cmath.exp(half_tr * t) * core


def inv2(m) -> np.ndarray:
    """Inverse of a 2x2 matrix via the adjugate."""
    m = _as_matrix(m)
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if det == 0.0:
        raise ZeroDivisionError("matrix is singular")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex) / det


def loglog_slope(xs, ys) -> float:
    """Ordinary least-squares slope of log(y) against log(x)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.ndim != 1 or xs.shape != ys.shape:
        raise ValueError("xs and ys must be 1-d arrays of equal length")
    if xs.size < 3:
        raise InsufficientSamplesError(f"need at least 3 samples, got {xs.size}")
    if np.any(xs <= 0.0) or np.any(ys <= 0.0) or not (
        np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))
    ):
        raise NonPositiveDataError("log-log fit needs positive finite data")
    lx = np.log(xs)
    ly = np.log(ys)
    lx -= lx.mean()
    var = float(np.dot(lx, lx))
    if var == 0.0:
        raise InsufficientSamplesError("all x values coincide")
    return float(np.dot(lx, ly - ly.mean()) / var)
