"""Shared test utilities: independent reference algorithms and random draws.

taylor_expm is deliberately a different algorithm from nhjc.numerics.expm2
(plain Taylor series with scaling and squaring versus the trace/traceless
closed form), so the two can face each other as oracle and subject.  The
closed-form matrices further down are hand-derived for omega = 1, epsilon = 5
and serve as entrywise pinning targets.
"""

from __future__ import annotations

import math

import numpy as np

from nhjc.model import ModelParams

_TAYLOR_TERMS = 30


def taylor_expm(m, t: float = 1.0) -> np.ndarray:
    """exp(M t) via a 30-term Taylor series with scaling and squaring.

    The scaling power is the smallest that brings the max-row-sum norm below
    1/2; each squaring roughly doubles the rounding error, so keeping the
    count minimal keeps the reference accurate to ~2**s * eps.
    """
    a = np.asarray(m, dtype=complex) * t
    norm = float(np.abs(a).sum(axis=1).max())
    s = max(0, math.ceil(math.log2(norm)) + 1) if norm > 0.5 else 0
    a = a / 2.0**s
    term = np.eye(2, dtype=complex)
    total = np.eye(2, dtype=complex)
    for k in range(1, _TAYLOR_TERMS):
        term = term @ a / k
        total = total + term
    for _ in range(s):
        total = total @ total
    return total


def random_params(rng, phase: str | None = None, margin: float = 1e-3, n_max: int = 5) -> ModelParams:
    """One random parameter draw, redrawn while too close to the EP band.

    Draws with |discriminant| < margin * scale are rejected, where scale is
    the characteristic size max(1, (omega-eps)^2, 4 gamma^2 (n+1)) also used
    by the EP tolerance; margin = 0 disables the rejection.  `phase`
    restricts the draw to "unbroken" or "broken".
    """
    while True:
        omega = rng.uniform(-3.0, 3.0)
        epsilon = rng.uniform(-5.0, 5.0)
        gamma = rng.uniform(0.05, 3.0) * (1.0 if rng.random() < 0.5 else -1.0)
        n = int(rng.integers(0, n_max + 1))
        p = ModelParams(omega, epsilon, gamma, n)
        scale = max(1.0, (omega - epsilon) ** 2, 4.0 * gamma**2 * (n + 1))
        d = p.discriminant
        if abs(d) < margin * scale:
            continue
        if phase == "unbroken" and d <= 0.0:
            continue
        if phase == "broken" and d >= 0.0:
            continue
        return p


def random_bloch(rng) -> np.ndarray:
    """Uniform random direction with radius in [0, 1)."""
    r = rng.normal(size=3)
    r /= np.linalg.norm(r)
    return r * rng.uniform(0.0, 1.0)


def match_order(values, targets):
    """Reorder a pair of eigenvalues to best match a target pair."""
    a, b = values
    x, y = targets
    if abs(a - x) + abs(b - y) <= abs(a - y) + abs(b - x):
        return a, b
    return b, a


# ---------------------------------------------------------------------------
# Hand-derived closed forms at omega = 1, epsilon = 5, delta = sqrt(n+1) gamma.
# The discriminant is 16 - 4 delta^2, so delta < 2 is unbroken, delta > 2 broken.


def unbroken_metric(delta: float) -> np.ndarray:
    s = math.sqrt(4.0 - delta * delta)
    return np.array([[2.0, delta], [delta, 2.0]], dtype=complex) / s


def unbroken_intertwiner(delta: float) -> np.ndarray:
    sp = math.sqrt(2.0 + delta)
    sm = math.sqrt(2.0 - delta)
    f = 1.0 / (2.0 * (4.0 - delta * delta) ** 0.25)
    return f * np.array([[sp + sm, sp - sm], [sp - sm, sp + sm]], dtype=complex)


def unbroken_intertwiner_inv(delta: float) -> np.ndarray:
    sp = math.sqrt(2.0 + delta)
    sm = math.sqrt(2.0 - delta)
    f = (4.0 - delta * delta) ** 0.25 / 2.0
    return f * np.array(
        [[1 / sp + 1 / sm, 1 / sp - 1 / sm], [1 / sp - 1 / sm, 1 / sp + 1 / sm]],
        dtype=complex,
    )


def unbroken_isospectral(n: int, delta: float) -> np.ndarray:
    root = math.sqrt(4.0 - delta * delta)
    return np.diag([n + 0.5 + root, n + 0.5 - root]).astype(complex)


def unbroken_projectors(delta: float):
    s = math.sqrt(4.0 - delta * delta)
    rho_one = np.array([[s + 2.0, delta], [-delta, s - 2.0]], dtype=complex) / (2.0 * s)
    rho_two = np.array([[s - 2.0, -delta], [delta, s + 2.0]], dtype=complex) / (2.0 * s)
    return rho_one, rho_two


def broken_metric(delta: float) -> np.ndarray:
    s = math.sqrt(delta * delta - 4.0)
    return np.array([[delta, 2.0], [2.0, delta]], dtype=complex) / s


def broken_intertwiner(delta: float) -> np.ndarray:
    tp = math.sqrt(delta + 2.0)
    tm = math.sqrt(delta - 2.0)
    f = 1.0 / (2.0 * (delta * delta - 4.0) ** 0.25)
    return f * np.array([[tp + tm, tp - tm], [tp - tm, tp + tm]], dtype=complex)


def broken_intertwiner_inv(delta: float) -> np.ndarray:
    tp = math.sqrt(delta + 2.0)
    tm = math.sqrt(delta - 2.0)
    f = (delta * delta - 4.0) ** 0.25 / 2.0
    return f * np.array(
        [[1 / tp + 1 / tm, 1 / tp - 1 / tm], [1 / tp - 1 / tm, 1 / tp + 1 / tm]],
        dtype=complex,
    )


def broken_isospectral(n: int, delta: float) -> np.ndarray:
    root = math.sqrt(delta * delta - 4.0)
    return np.array([[n + 0.5, root], [-root, n + 0.5]], dtype=complex)


def broken_projectors(delta: float):
    iroot = 1j * math.sqrt(delta * delta - 4.0)
    rho_one = np.array([[iroot + 2.0, delta], [-delta, iroot - 2.0]], dtype=complex)
    rho_two = np.array([[iroot - 2.0, -delta], [delta, iroot + 2.0]], dtype=complex)
    return rho_one / (2.0 * iroot), rho_two / (2.0 * iroot)
