"""Certified lower bounds from the overlap radius, plus the q comparison pair.

Frozen decimals were recomputed with mpmath at 30 digits.
"""

import math

import numpy as np
import pytest

from acbounds.bounds import (
    UnsupportedOrderError,
    bound,
    bound_from_radius,
    epsilon_from_overlap,
    optimal_assignment,
    overlap_from_epsilon,
    parse_bound_order,
    q_ac,
    q_mu,
)
from acbounds.entropy import MIN_ENTROPY, SHANNON, RenyiOrder

Q_AC_AT_075 = 0.3004380183464280  # shannon, m = 2, r = 3/2
Q_MU_AT_075 = 0.2075187496394219  # -(1/2) log2(3/4)
COLLISION_AT_R1_M2 = 0.4150374992788438  # 2 - log2(3)
MIN_ENTROPY_AT_R1_M2 = 0.2284466968363880  # -log2((1 + sqrt(1/2))/2)


# -------------------------------------------------------- assignments


def test_optimal_assignment_packs_overlap():
    a = optimal_assignment(1.3, 2)
    assert np.allclose(a.t, [1.0, 0.3], atol=1e-12)
    a = optimal_assignment(3.0, 4)
    assert np.allclose(a.t, [1.0, 1.0, 1.0, 0.0], atol=0)
    a = optimal_assignment(0.4, 3)
    assert np.allclose(a.t, [0.4, 0.0, 0.0], atol=1e-12)


def test_optimal_assignment_conserves_total():
    rng = np.random.default_rng(0)
    for _ in range(100):
        m = int(rng.integers(1, 8))
        r = rng.uniform(0.05, m)
        a = optimal_assignment(r, m)
        assert a.total == pytest.approx(r, abs=1e-12)
        assert np.all(a.t >= 0.0) and np.all(a.t <= 1.0)


def test_optimal_assignment_rejects_bad_radius():
    with pytest.raises(ValueError):
        optimal_assignment(2.5, 2)
    with pytest.raises(ValueError):
        optimal_assignment(-0.1, 2)


# ----------------------------------------------------- frozen anchors


def test_shannon_anchor_half_bit():
    b = bound_from_radius(SHANNON, 2, 1.0)
    assert b.value_bits == pytest.approx(0.5, abs=1e-12)
    assert b.method == "low_alpha"


def test_shannon_anchor_at_three_halves():
    b = bound_from_radius(SHANNON, 2, 1.5)
    assert b.value_bits == pytest.approx(Q_AC_AT_075, abs=1e-13)


def test_collision_entropy_anchor():
    b = bound_from_radius(RenyiOrder.finite(2.0), 2, 1.0)
    assert b.value_bits == pytest.approx(COLLISION_AT_R1_M2, abs=1e-13)
    assert b.method == "high_alpha"


def test_min_entropy_anchor():
    b = bound_from_radius(MIN_ENTROPY, 2, 1.0)
    assert b.value_bits == pytest.approx(MIN_ENTROPY_AT_R1_M2, abs=1e-13)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_identity_matrix_gives_m_minus_one_over_m(m):
    b = bound(SHANNON, np.eye(m))
    assert abs(b.value_bits - (m - 1) / m) <= 1e-12


# ----------------------------------------------------------- dispatch


def test_order_routing():
    assert bound_from_radius(RenyiOrder.finite(1.2), 3, 1.5).method == "low_alpha"
    assert bound_from_radius(RenyiOrder.finite(1.5), 3, 1.5).method == "low_alpha"
    assert bound_from_radius(RenyiOrder.finite(3.0), 3, 1.5).method == "high_alpha"
    assert bound_from_radius(MIN_ENTROPY, 3, 1.5).method == "high_alpha"


def test_open_band_is_rejected():
    with pytest.raises(UnsupportedOrderError):
        bound_from_radius(RenyiOrder.finite(1.7), 2, 1.0)
    with pytest.raises(UnsupportedOrderError):
        parse_bound_order("1.9")
    # edges stay usable
    assert parse_bound_order("1.5").alpha == 1.5
    assert parse_bound_order("2").alpha == 2.0


def test_parse_bound_order_passthrough():
    assert parse_bound_order("shannon") == SHANNON
    assert parse_bound_order("inf") == MIN_ENTROPY


# --------------------------------------------------------- properties


@pytest.mark.parametrize(
    "order",
    [SHANNON, RenyiOrder.finite(1.2), RenyiOrder.finite(2.0), MIN_ENTROPY],
)
def test_bound_monotone_nonincreasing_in_radius(order):
    for m in (2, 3, 5):
        radii = np.linspace(0.05, m, 80)
        values = [bound_from_radius(order, m, float(r)).value_bits for r in radii]
        assert np.all(np.diff(values) <= 1e-12)


def test_bound_continuous_at_integer_radius():
    for order in (SHANNON, MIN_ENTROPY):
        for r0 in (1.0, 2.0):
            lo = bound_from_radius(order, 3, r0 - 1e-9).value_bits
            hi = bound_from_radius(order, 3, r0 + 1e-9).value_bits
            assert abs(lo - hi) < 1e-6


def test_bound_values_stay_in_unit_interval():
    rng = np.random.default_rng(1)
    orders = [SHANNON, RenyiOrder.finite(1.3), RenyiOrder.finite(4.0), MIN_ENTROPY]
    for _ in range(200):
        m = int(rng.integers(1, 7))
        r = rng.uniform(0.01, m)
        for order in orders:
            v = bound_from_radius(order, m, r).value_bits
            assert 0.0 <= v <= 1.0


def test_bound_accepts_matrix_and_clamps_radius():
    t = np.array([[1.0, 0.5], [0.5, 1.0]])
    b = bound(SHANNON, t)
    assert b.r == pytest.approx(1.5, abs=1e-12)
    assert b.m == 2
    # radius never drops below the largest diagonal entry
    b = bound(SHANNON, np.eye(3))
    assert b.r == 1.0


def test_bound_rejects_invalid_matrix():
    with pytest.raises(ValueError):
        bound(SHANNON, np.array([[1.0, 0.2], [0.3, 1.0]]))
    with pytest.raises(ValueError):
        bound(SHANNON, np.diag([1.0, -0.2]))


# ------------------------------------------------------ q comparisons


def test_q_endpoints_agree():
    assert q_mu(0.5) == pytest.approx(0.5, abs=1e-9)
    assert q_ac(0.5) == pytest.approx(0.5, abs=1e-9)
    assert q_mu(1.0) == pytest.approx(0.0, abs=1e-9)
    assert q_ac(1.0) == pytest.approx(0.0, abs=1e-9)


def test_q_frozen_spot_values():
    assert q_mu(0.75) == pytest.approx(Q_MU_AT_075, abs=1e-13)
    assert q_ac(0.75) == pytest.approx(Q_AC_AT_075, abs=1e-13)


def test_q_ac_strictly_beats_q_mu_inside():
    grid = np.linspace(0.5, 1.0, 1002)[1:-1]
    for c in grid:
        assert q_ac(float(c)) > q_mu(float(c))


def test_q_domain_checks():
    for fn in (q_mu, q_ac):
        with pytest.raises(ValueError):
            fn(0.4)
        with pytest.raises(ValueError):
            fn(1.1)


def test_overlap_epsilon_conversions():
    assert overlap_from_epsilon(0.5) == 0.75
    assert epsilon_from_overlap(0.75) == pytest.approx(0.5, abs=1e-15)
    assert overlap_from_epsilon(-0.5) == 0.75  # magnitude only
    for eps in np.linspace(-1, 1, 21):
        c = overlap_from_epsilon(float(eps))
        assert epsilon_from_overlap(c) == pytest.approx(abs(eps), abs=1e-12)


def test_q_ac_equals_two_observable_shannon_bound():
    # same quantity through two code paths
    for c in (0.55, 0.75, 0.95):
        eps = 2.0 * c - 1.0
        via_bound = bound_from_radius(SHANNON, 2, 1.0 + eps).value_bits
        assert q_ac(c) == pytest.approx(via_bound, abs=1e-12)
