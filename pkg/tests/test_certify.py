"""CHSH scores, anti-commutator ceilings, and the certification pipeline."""

import math

import numpy as np
import pytest

from acbounds.certify import (
    BELL_LIMIT,
    DevicePair,
    certify_pipeline,
    chsh_expectation,
    devices_from_realization,
    epsilon_bound_from_beta,
    ideal_devices,
    sample_chsh,
    tprime,
)
from acbounds.ellipsoid import effective_anticommutators
from acbounds.entropy import MIN_ENTROPY, SHANNON
from acbounds.matcore import spectral_norm
from acbounds.oracle import random_feasible_pair
from acbounds.ellipsoid import construct_realization

C_AT_BETA_25 = 0.8267972847076846  # (2.5/4) sqrt(8 - 2.5^2), mpmath-frozen


# ------------------------------------------------------------ analytic


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_ideal_devices_reach_bell_limit(m):
    devices = ideal_devices(m)
    for j in range(1, m + 1):
        for k in range(j + 1, m + 1):
            beta = chsh_expectation(devices, j, k)
            assert beta == pytest.approx(2.0 * math.sqrt(2.0), abs=1e-10)


def test_cloned_setting_scores_below_limit():
    # Alice measures the same observable in both slots against the ideal Bob;
    # the j-terms keep 2/sqrt(2) while the k-terms cancel, leaving sqrt(2)
    ideal = ideal_devices(2)
    devices = DevicePair(
        state=ideal.state,
        alice=(ideal.alice[0], ideal.alice[0]),
        bob=ideal.bob,
        dim_a=ideal.dim_a,
        dim_b=ideal.dim_b,
    )
    beta = chsh_expectation(devices, 1, 2)
    assert beta == pytest.approx(math.sqrt(2.0), abs=1e-12)
    assert beta <= 2.0 * math.sqrt(2.0)


def test_epsilon_bound_anchor_values():
    assert epsilon_bound_from_beta(2.5) == pytest.approx(C_AT_BETA_25, abs=1e-13)
    assert epsilon_bound_from_beta(BELL_LIMIT) == 0.0
    assert epsilon_bound_from_beta(-BELL_LIMIT) == 0.0
    assert epsilon_bound_from_beta(3.5) == 0.0  # clamped into the quantum range
    assert epsilon_bound_from_beta(2.0) == 1.0
    assert epsilon_bound_from_beta(0.0) == 1.0
    assert epsilon_bound_from_beta(-1.7) == 1.0


def test_epsilon_bound_monotone_above_classical():
    betas = np.linspace(2.0 + 1e-6, BELL_LIMIT, 500)
    values = [epsilon_bound_from_beta(float(b)) for b in betas]
    assert np.all(np.diff(values) <= 1e-12)
    assert values[0] == pytest.approx(1.0, abs=1e-5)  # continuous at the threshold


def test_tprime_assembly():
    c = {(1, 2): 0.5, (1, 3): 0.5, (2, 3): 0.5}
    t = tprime(3, c)
    assert np.array_equal(np.diag(t), np.ones(3))
    assert spectral_norm(t) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        tprime(3, {(1, 2): 0.5})
    with pytest.raises(ValueError):
        tprime(2, {(1, 2): 1.5})


# ------------------------------------------------------------ sampling


def test_sampled_score_concentrates_on_limit():
    devices = ideal_devices(2)
    stats = sample_chsh(devices, 1, 2, rounds_per_setting=100_000, seed=13)
    assert abs(stats.beta_hat - BELL_LIMIT) <= 5.0 * stats.std_error
    assert stats.rounds_used == 4 * 100_000


def test_sampled_score_single_round_support():
    devices = ideal_devices(2)
    for seed in range(12):
        stats = sample_chsh(devices, 1, 2, rounds_per_setting=1, seed=seed)
        assert stats.beta_hat in (-4.0, -2.0, 0.0, 2.0, 4.0)


def test_classical_deterministic_devices_score_two():
    dim = 2
    z = np.diag([1.0, -1.0]).astype(complex)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0  # |00><00|
    from acbounds.gamma import QuantumState

    devices = DevicePair(
        state=QuantumState(rho, 4),
        alice=(z, z),
        bob={(1, 2, 0): z, (1, 2, 1): z},
        dim_a=dim,
        dim_b=dim,
    )
    for seed in (0, 1, 2, 3):
        stats = sample_chsh(devices, 1, 2, rounds_per_setting=200, seed=seed)
        assert stats.beta_hat == 2.0
        assert stats.std_error == 0.0


def test_sampling_deterministic_per_seed():
    devices = ideal_devices(2)
    a = sample_chsh(devices, 1, 2, rounds_per_setting=5000, seed=3)
    b = sample_chsh(devices, 1, 2, rounds_per_setting=5000, seed=3)
    assert a.beta_hat == b.beta_hat and a.std_error == b.std_error


def test_sampled_coverage_over_many_seeds():
    devices = ideal_devices(2)
    hits = 0
    for seed in range(100):
        stats = sample_chsh(devices, 1, 2, rounds_per_setting=10_000, seed=seed)
        if abs(stats.beta_hat - BELL_LIMIT) <= 3.0 * stats.std_error:
            hits += 1
    assert hits >= 95


# ------------------------------------------------------------ pipeline


def test_exact_pipeline_hits_ideal_values():
    for m, expected in ((2, 0.5), (3, 2.0 / 3.0)):
        report = certify_pipeline(m, [SHANNON], rounds_per_setting=0, seed=0)
        assert report.exact
        assert report.total_rounds == 0
        assert report.r_prime == 1.0
        assert report.bounds[0].value_bits == expected
        for stats in report.stats:
            assert stats.beta_hat == pytest.approx(BELL_LIMIT, abs=1e-10)


def test_pipeline_round_accounting_and_orders():
    report = certify_pipeline(
        3, [SHANNON, MIN_ENTROPY], rounds_per_setting=500, seed=42
    )
    assert not report.exact
    assert report.total_rounds == 3 * 4 * 500  # three pairs, four settings each
    assert [b.order for b in report.bounds] == [SHANNON, MIN_ENTROPY]
    assert report.bounds[0].value_bits >= report.bounds[1].value_bits - 1e-12
    assert report.seed == 42


def test_pipeline_bound_improves_with_rounds():
    small = certify_pipeline(3, [SHANNON], rounds_per_setting=10**3, seed=42)
    big = certify_pipeline(3, [SHANNON], rounds_per_setting=10**5, seed=42)
    assert 0.0 < small.bounds[0].value_bits < 2.0 / 3.0
    assert big.bounds[0].value_bits > small.bounds[0].value_bits


def test_pipeline_flags_subclassical_pairs():
    # devices that never violate the classical threshold certify nothing
    z = np.diag([1.0, -1.0]).astype(complex)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0
    from acbounds.gamma import QuantumState

    devices = DevicePair(
        state=QuantumState(rho, 4),
        alice=(z, z),
        bob={(1, 2, 0): z, (1, 2, 1): z},
        dim_a=2,
        dim_b=2,
    )
    report = certify_pipeline(2, [SHANNON], rounds_per_setting=300, seed=1, devices=devices)
    assert (1, 2) in report.subclassical_pairs
    assert report.c_pairs[(1, 2)] == 1.0
    # r' = m certifies nothing beyond round-off
    assert report.bounds[0].value_bits == pytest.approx(0.0, abs=1e-12)


def test_certified_radius_is_conservative():
    # the certificate may overestimate, never underestimate, anti-commutation
    rng = np.random.default_rng(7)
    for _ in range(25):
        m = int(rng.integers(2, 4))
        g, t = random_feasible_pair(m, rng)
        realization = construct_realization(g, t)
        devices = devices_from_realization(realization)
        t_true = effective_anticommutators(realization.state, realization.observables)
        report = certify_pipeline(m, [SHANNON], rounds_per_setting=0, seed=0, devices=devices)
        assert report.r_prime >= spectral_norm(t_true) - 1e-9


def test_device_pair_validation():
    ideal = ideal_devices(2)
    with pytest.raises(ValueError):
        DevicePair(
            state=ideal.state,
            alice=ideal.alice,
            bob={(1, 2, 0): ideal.bob[(1, 2, 0)]},  # missing setting
            dim_a=ideal.dim_a,
            dim_b=ideal.dim_b,
        )
    with pytest.raises(ValueError):
        DevicePair(
            state=ideal.state,
            alice=(ideal.alice[0],),  # m = 1 cannot play the game
            bob=ideal.bob,
            dim_a=ideal.dim_a,
            dim_b=ideal.dim_b,
        )


def test_assumptions_are_reported():
    report = certify_pipeline(2, [SHANNON], rounds_per_setting=100, seed=0)
    assert any("i.i.d." in a or "memoryless" in a for a in report.assumptions)
