"""Anti-commuting operator sets and generalized Bloch states."""

import numpy as np
import pytest

from acbounds.gamma import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    build_gamma_set,
    expectation,
    is_binary_observable,
    random_bloch_state,
    random_projective_observable,
    state_from_bloch,
)


@pytest.mark.parametrize("m", range(1, 11))
def test_gamma_set_algebra(m):
    gam = build_gamma_set(m)
    assert gam.m == m
    eye = np.eye(gam.dim)
    ops = gam.operators
    for j, a in enumerate(ops):
        assert np.array_equal(a, a.conj().T)
        assert np.max(np.abs(a @ a - eye)) == 0.0
        assert abs(np.trace(a)) == 0.0
        for b in ops[j + 1 :]:
            # products of Pauli strings cancel exactly, not just approximately
            assert np.max(np.abs(a @ b + b @ a)) == 0.0


def test_gamma_dimensions():
    assert build_gamma_set(1).dim == 2
    assert build_gamma_set(2).dim == 2
    assert build_gamma_set(3).dim == 2
    assert build_gamma_set(4).dim == 4
    assert build_gamma_set(5).dim == 4
    assert build_gamma_set(7).dim == 8
    assert build_gamma_set(10).dim == 32


def test_gamma_three_is_pauli_basis():
    ops = build_gamma_set(3).operators
    assert np.array_equal(ops[0], PAULI_X)
    assert np.array_equal(ops[1], PAULI_Y)
    assert np.array_equal(ops[2], PAULI_Z)


def test_gamma_set_cached_and_frozen():
    gam = build_gamma_set(4)
    assert build_gamma_set(4) is gam
    with pytest.raises(ValueError):
        gam.operators[0][0, 0] = 5.0


def test_build_gamma_set_rejects_bad_m():
    for m in (0, -1):
        with pytest.raises(ValueError):
            build_gamma_set(m)


def test_state_from_bloch_pauli_case():
    gam = build_gamma_set(3)
    state = state_from_bloch(np.array([1.0, 0.0, 0.0]), gam)
    assert np.max(np.abs(state.rho - (np.eye(2) + PAULI_X) / 2.0)) == 0.0


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6])
def test_bloch_readout_round_trip(m):
    gam = build_gamma_set(m)
    rng = np.random.default_rng(100 + m)
    for _ in range(25):
        x = rng.standard_normal(m)
        x *= rng.random() / np.linalg.norm(x)
        state = state_from_bloch(x, gam)
        got = np.array([expectation(state, a) for a in gam.operators])
        assert np.max(np.abs(got - x)) < 1e-10


def test_unit_bloch_vector_touches_state_boundary():
    gam = build_gamma_set(5)
    rng = np.random.default_rng(9)
    x = rng.standard_normal(5)
    x /= np.linalg.norm(x)
    state = state_from_bloch(x, gam)
    assert abs(state.min_eigenvalue()) < 1e-12


def test_state_from_bloch_rejects_long_vectors():
    gam = build_gamma_set(2)
    with pytest.raises(ValueError):
        state_from_bloch(np.array([0.9, 0.9]), gam)
    with pytest.raises(ValueError):
        state_from_bloch(np.array([0.1]), gam)  # length mismatch


def test_random_projective_observable_is_binary():
    rng = np.random.default_rng(10)
    for dim in (2, 4):
        for _ in range(20):
            a = random_projective_observable(dim, rng)
            assert is_binary_observable(a)
            assert np.max(np.abs(a @ a - np.eye(dim))) < 1e-10


def test_random_bloch_state_is_valid_and_deterministic():
    gam = build_gamma_set(4)
    s1 = random_bloch_state(gam, np.random.default_rng(3))
    s2 = random_bloch_state(gam, np.random.default_rng(3))
    assert np.array_equal(s1.rho, s2.rho)
    assert abs(np.trace(s1.rho) - 1.0) < 1e-12
    assert s1.min_eigenvalue() > -1e-9
