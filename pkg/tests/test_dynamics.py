"""Tests for the no-jump conditional evolution on one invariant subspace."""

import math

import numpy as np
import pytest

from helpers import match_order, random_bloch, random_params

from nhjc import numerics
from nhjc.dynamics import (
    SIGMA_Y,
    BlochState,
    default_time_grid,
    effective_generator,
    evolve_no_jump,
    normalized_state,
    propagator,
    survival_probability,
)
from nhjc.errors import ExceptionalPointError, ZeroWeightError
from nhjc.model import MatrixRole, ModelParams, spectrum_closed_form

BROKEN = ModelParams(1.0, 5.0, 4.0, 0)  # Gamma = sqrt(12)
UNBROKEN = ModelParams(1.0, 5.0, 1.0, 0)  # Lambda = sqrt(3)


def test_bloch_state_validation():
    with pytest.raises(ValueError):
        BlochState(np.array([0.0, 0.0, 1.1]))
    with pytest.raises(ValueError):
        BlochState(np.array([0.0, 0.0]))
    with pytest.raises(ValueError):
        BlochState(np.array([0.0, 0.0, np.nan]))
    with pytest.raises(ValueError):
        BlochState(np.array([0.0, 0.0, 1.0]), weight=-1.0)


def test_bloch_state_matrix():
    state = BlochState(np.array([0.0, 0.0, 1.0]), weight=2.0)
    np.testing.assert_allclose(state.matrix(), [[2.0, 0.0], [0.0, 0.0]])
    rng = np.random.default_rng(81)
    for _ in range(20):
        r = random_bloch(rng)
        m = BlochState(r, weight=0.7).matrix()
        assert np.max(np.abs(m - m.conj().T)) < 1e-15
        assert math.isclose(float(np.trace(m).real), 0.7, rel_tol=1e-14)


def test_effective_generator_frozen_cases():
    gen = effective_generator(BROKEN)
    assert gen.is_broken
    assert math.isclose(gen.gamma_eff.real, math.sqrt(12.0), rel_tol=1e-15)
    assert gen.gamma_eff.imag == 0.0
    assert gen.shift == 0.5
    gen = effective_generator(UNBROKEN)
    assert not gen.is_broken
    assert gen.gamma_eff.real == 0.0
    assert math.isclose(gen.gamma_eff.imag, math.sqrt(3.0), rel_tol=1e-15)
    assert math.isclose(gen.rate, math.sqrt(3.0), rel_tol=1e-15)
    with pytest.raises(ExceptionalPointError):
        effective_generator(ModelParams(1.0, 5.0, 2.0, 0))


def test_generator_matrix_structure_and_spectrum():
    rng = np.random.default_rng(82)
    for _ in range(100):
        p = random_params(rng)
        gen = effective_generator(p)
        m = gen.matrix()
        expected = gen.shift * np.eye(2) + 1j * gen.gamma_eff * SIGMA_Y
        assert np.array_equal(m, expected)
        # isospectral to the Hamiltonian block
        s = spectrum_closed_form(p)
        got = match_order(numerics.eig2(m).values, (s.eigenvalue_I, s.eigenvalue_II))
        assert abs(got[0] - s.eigenvalue_I) < 1e-10 * max(1.0, abs(s.eigenvalue_I))
        assert abs(got[1] - s.eigenvalue_II) < 1e-10 * max(1.0, abs(s.eigenvalue_II))


def test_evolution_frozen_broken_point():
    # r = (0, 0, 1), Gamma = sqrt(12), t = 0.1: D = cosh(0.2 sqrt(12))
    gen = effective_generator(BROKEN)
    state = evolve_no_jump(gen, BlochState(np.array([0.0, 0.0, 1.0])), 0.1)
    assert math.isclose(state.weight, 1.2497549236187437, rel_tol=1e-15)
    assert math.isclose(state.r[1], math.tanh(0.2 * math.sqrt(12.0)), rel_tol=1e-14)
    assert math.isclose(state.r[2], 1.0 / 1.2497549236187437, rel_tol=1e-14)
    assert state.r[0] == 0.0


def test_evolution_requires_sane_time():
    gen = effective_generator(BROKEN)
    state = BlochState(np.array([0.0, 0.0, 1.0]))
    with pytest.raises(ValueError):
        evolve_no_jump(gen, state, -0.1)
    with pytest.raises(ValueError):
        evolve_no_jump(gen, state, math.inf)
    assert evolve_no_jump(gen, state, 0.0).weight == state.weight
    np.testing.assert_array_equal(evolve_no_jump(gen, state, 0.0).r, state.r)


def test_evolution_matches_matrix_exponential():
    rng = np.random.default_rng(83)
    for _ in range(200):
        p = random_params(rng)
        gen = effective_generator(p)
        t = float(rng.uniform(0.0, 3.0 / gen.rate))
        state = BlochState(random_bloch(rng), weight=float(rng.uniform(0.2, 2.0)))
        u = numerics.expm2(-1j * gen.matrix(), t)
        oracle = u @ state.matrix() @ u.conj().T
        evolved = evolve_no_jump(gen, state, t).matrix()
        scale = max(1.0, float(np.linalg.norm(oracle)))
        assert np.max(np.abs(evolved - oracle)) < 1e-10 * scale


def test_unbroken_phase_rotates():
    gen = effective_generator(UNBROKEN)
    lam = math.sqrt(3.0)
    for t in (0.0, 0.3, 1.7):
        state = evolve_no_jump(gen, BlochState(np.array([0.0, 0.0, 1.0])), t)
        assert state.weight == 1.0
        assert math.isclose(state.r[0], -math.sin(2.0 * lam * t), abs_tol=1e-14)
        assert math.isclose(state.r[2], math.cos(2.0 * lam * t), abs_tol=1e-14)
        assert state.r[1] == 0.0
    # Bloch length is preserved and the motion is periodic with pi / Lambda
    rng = np.random.default_rng(84)
    period = math.pi / lam
    for _ in range(20):
        r = random_bloch(rng)
        t = float(rng.uniform(0.0, 5.0))
        one = evolve_no_jump(gen, BlochState(r), t)
        two = evolve_no_jump(gen, BlochState(r), t + period)
        assert math.isclose(
            float(np.linalg.norm(one.r)), float(np.linalg.norm(r)), abs_tol=1e-14
        )
        assert np.max(np.abs(one.r - two.r)) < 1e-12


def test_broken_phase_purifies():
    gen = effective_generator(BROKEN)
    rng = np.random.default_rng(85)
    for _ in range(20):
        state = BlochState(random_bloch(rng))
        late = normalized_state(evolve_no_jump(gen, state, 5.0))
        # everything generic flows to the sigma_y = +1 eigenstate
        np.testing.assert_allclose(late.r, [0.0, 1.0, 0.0], atol=1e-8)
        assert late.weight == 1.0


def test_broken_phase_fixed_points():
    gen = effective_generator(BROKEN)
    big_gamma = math.sqrt(12.0)
    up = evolve_no_jump(gen, BlochState(np.array([0.0, 1.0, 0.0])), 0.4)
    np.testing.assert_allclose(up.r, [0.0, 1.0, 0.0], atol=1e-14)
    assert math.isclose(up.weight, math.exp(2.0 * big_gamma * 0.4), rel_tol=1e-12)
    down = evolve_no_jump(gen, BlochState(np.array([0.0, -1.0, 0.0])), 0.4)
    np.testing.assert_allclose(down.r, [0.0, -1.0, 0.0], atol=1e-10)
    assert math.isclose(down.weight, math.exp(-2.0 * big_gamma * 0.4), rel_tol=1e-12)


def test_survival_probability():
    gen = effective_generator(BROKEN)
    state = BlochState(np.array([0.3, -0.2, 0.5]), weight=1.5)
    for t in (0.0, 0.1, 0.7):
        assert math.isclose(
            survival_probability(gen, state, t),
            evolve_no_jump(gen, state, t).weight,
            rel_tol=1e-14,
        )
    assert survival_probability(gen, state, 0.0) == 1.5
    gen_u = effective_generator(UNBROKEN)
    assert survival_probability(gen_u, state, 2.0) == 1.5
    with pytest.raises(ValueError):
        survival_probability(gen, state, -1.0)


def test_normalized_state():
    state = BlochState(np.array([0.0, 0.5, 0.0]), weight=3.0)
    assert normalized_state(state).weight == 1.0
    np.testing.assert_array_equal(normalized_state(state).r, state.r)
    with pytest.raises(ZeroWeightError):
        normalized_state(BlochState(np.array([0.0, 0.0, 1.0]), weight=0.0))


def test_propagator_role_and_value():
    gen = effective_generator(UNBROKEN)
    block = propagator(gen, 0.8)
    assert block.role is MatrixRole.PROPAGATOR
    np.testing.assert_allclose(
        block.entries, numerics.expm2(-1j * gen.matrix(), 0.8), atol=1e-15
    )


def test_default_time_grid():
    gen = effective_generator(BROKEN)
    grid = default_time_grid(gen)
    assert len(grid) == 500
    assert grid[0] == 0.0
    assert math.isclose(grid[-1], 5.0 / math.sqrt(12.0), rel_tol=1e-15)
    assert len(default_time_grid(gen, points=7)) == 7
    with pytest.raises(ValueError):
        default_time_grid(gen, points=1)
