"""State-independent entropy bounds from the anti-commutation matrix.

Only the spectral norm ``r = ||T||`` of the anti-commutation matrix enters
the bounds.  Relaxing the feasible ellipsoid to the sphere of radius
``sqrt(r)`` turns the minimisation into an assignment problem over
``t_k = g_k^2`` with ``sum t_k = r``:

* for Shannon and finite orders ``alpha in (1, 3/2]`` the per-setting weight
  is convex in ``t``, so the extremal assignment packs full weight into
  ``floor(r)`` settings plus one fractional remainder
  (:func:`bound_low_alpha`);
* for ``alpha in [2, inf)`` and the min-entropy it is concave, so the
  uniform assignment ``t_k = r/M`` is extremal (:func:`bound_high_alpha`).

Orders strictly between 3/2 and 2 are neither, and are rejected.  Both
branches evaluate the entropy of the explicit extremal distribution, so the
returned values are exactly the entropies of realisable strategies in the
relaxed problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .ellipsoid import check_anticommutation_matrix
from .entropy import RenyiOrder, binary_entropy, cond_entropy_of_g


class UnsupportedOrderError(ValueError):
    """Renyi order in the uncovered band alpha in (3/2, 2)."""


@dataclass(frozen=True)
class Assignment:
    """Squared expectation values ``t_k`` assigned to each setting."""

    m: int
    t: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=float)
        if t.shape != (self.m,):
            raise ValueError(f"assignment shape {t.shape} != ({self.m},)")
        if np.any(t < -1e-12) or np.any(t > 1.0 + 1e-12):
            raise ValueError("assignment entries must lie in [0, 1]")
        t = np.clip(t, 0.0, 1.0)
        t.flags.writeable = False
        object.__setattr__(self, "t", t)

    @property
    def total(self) -> float:
        return float(self.t.sum())


@dataclass(frozen=True)
class UncertaintyBound:
    """A certified lower bound on ``H_alpha(X|K)`` in bits."""

    value_bits: float
    order: RenyiOrder
    m: int
    r: float
    assignment: Assignment
    method: str  # "low_alpha" | "high_alpha"


def optimal_assignment(r: float, m: int) -> Assignment:
    """Extremal assignment for the convex regime: ones, one fraction, zeros."""
    if m < 1:
        raise ValueError("need at least one setting")
    r = float(r)
    if not 0.0 < r <= m + 1e-12:
        raise ValueError(f"radius {r} outside (0, {m}]")
    r = min(r, float(m))
    full = min(int(math.floor(r)), m)
    t = np.zeros(m)
    t[:full] = 1.0
    if full < m:
        t[full] = r - full
    if abs(t.sum() - r) > 1e-12:
        raise AssertionError("assignment mass does not match the radius")
    return Assignment(m=m, t=t)


def _supported_low(order: RenyiOrder) -> bool:
    return order.kind == "shannon" or (
        order.kind == "finite" and order.alpha <= 1.5
    )


def _supported_high(order: RenyiOrder) -> bool:
    return order.kind == "min" or (order.kind == "finite" and order.alpha >= 2.0)


def bound_low_alpha(order: RenyiOrder, m: int, r: float) -> UncertaintyBound:
    """Shannon / ``alpha in (1, 3/2]`` bound from the packed assignment."""
    if not _supported_low(order):
        raise UnsupportedOrderError(
            f"order {order.label()} is not in the convex regime (1, 3/2] or shannon"
        )
    assignment = optimal_assignment(r, m)
    g = np.sqrt(assignment.t)
    value = float(cond_entropy_of_g(order, g))
    return UncertaintyBound(
        value_bits=min(max(value, 0.0), 1.0),
        order=order,
        m=m,
        r=float(r),
        assignment=assignment,
        method="low_alpha",
    )


def bound_high_alpha(order: RenyiOrder, m: int, r: float) -> UncertaintyBound:
    """``alpha in [2, inf)`` / min-entropy bound from the uniform assignment."""
    if not _supported_high(order):
        raise UnsupportedOrderError(
            f"order {order.label()} is not in the concave regime [2, inf) or min-entropy"
        )
    if m < 1:
        raise ValueError("need at least one setting")
    r = float(r)
    if not 0.0 < r <= m + 1e-12:
        raise ValueError(f"radius {r} outside (0, {m}]")
    r = min(r, float(m))
    assignment = Assignment(m=m, t=np.full(m, r / m))
    g = np.sqrt(assignment.t)
    value = float(cond_entropy_of_g(order, g))
    return UncertaintyBound(
        value_bits=min(max(value, 0.0), 1.0),
        order=order,
        m=m,
        r=r,
        assignment=assignment,
        method="high_alpha",
    )


def bound_from_radius(order: RenyiOrder, m: int, r: float) -> UncertaintyBound:
    """Dispatch on the order's regime given the spectral radius directly."""
    if _supported_low(order):
        return bound_low_alpha(order, m, r)
    if _supported_high(order):
        return bound_high_alpha(order, m, r)
    raise UnsupportedOrderError(
        f"no bound covers Renyi order {order.label()}: the band (3/2, 2) is open"
    )


def bound(order: RenyiOrder, t: np.ndarray) -> UncertaintyBound:
    """Entropy bound for the measurement scenario described by matrix ``t``.

    ``r`` is the spectral norm of ``t``, clamped into
    ``[max diag(t), M]`` to absorb eigensolver round-off.
    """
    t = check_anticommutation_matrix(t)
    m = t.shape[0]
    r = matcore.spectral_norm(t)
    r = min(max(r, float(np.max(np.diag(t)))), float(m))
    return bound_from_radius(order, m, r)


def parse_bound_order(text: str) -> RenyiOrder:
    """Parse an order spec and reject the uncovered band immediately.

    Same grammar as :meth:`RenyiOrder.parse`; decimals in ``(3/2, 2)`` raise
    :class:`UnsupportedOrderError` so callers fail at argument-parse time
    rather than deep inside a run.
    """
    order = RenyiOrder.parse(text)
    if order.kind == "finite" and 1.5 < order.alpha < 2.0:
        raise UnsupportedOrderError(
            f"alpha = {order.alpha:g} lies in (1.5, 2), where neither bound applies"
        )
    return order


def overlap_from_epsilon(epsilon: float) -> float:
    """Map an effective anti-commutator to the overlap ``c = (1 + |eps|) / 2``."""
    epsilon = float(epsilon)
    if abs(epsilon) > 1.0 + 1e-12:
        raise ValueError("effective anti-commutator must lie in [-1, 1]")
    return (1.0 + min(abs(epsilon), 1.0)) / 2.0


def epsilon_from_overlap(c: float) -> float:
    """Inverse of :func:`overlap_from_epsilon` on the non-negative branch."""
    c = float(c)
    if not 0.5 - 1e-12 <= c <= 1.0 + 1e-12:
        raise ValueError("overlap must lie in [1/2, 1]")
    return min(max(2.0 * c - 1.0, 0.0), 1.0)


def q_mu(c: float) -> float:
    """The Maassen-Uffink benchmark ``-1/2 log2 c`` for overlap ``c``."""
    c = float(c)
    if not 0.5 - 1e-12 <= c <= 1.0 + 1e-12:
        raise ValueError("overlap must lie in [1/2, 1]")
    return -0.5 * math.log2(min(c, 1.0)) + 0.0


def q_ac(c: float) -> float:
    """This package's two-observable Shannon bound as a function of overlap.

    Evaluates the packed-assignment bound at ``M = 2`` and ``r = 2c``, which
    collapses to ``h((1 + sqrt(2c - 1)) / 2) / 2``.
    """
    c = float(c)
    if not 0.5 - 1e-12 <= c <= 1.0 + 1e-12:
        raise ValueError("overlap must lie in [1/2, 1]")
    eps = epsilon_from_overlap(c)
    return binary_entropy((1.0 + math.sqrt(eps)) / 2.0) / 2.0
