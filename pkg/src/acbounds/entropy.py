"""Conditional Renyi entropies of binary outcomes under uniform setting choice.

The joint distributions handled here have a binary outcome ``X`` and a
setting register ``K`` chosen uniformly among ``M`` values:

    Pr[X=x, K=k] = (1/M) * (1 + (-1)^x g_k) / 2

for an expectation vector ``g``.  The conditional entropy of order ``alpha``
follows the quantity

    w_alpha(g) = [((1+g)/2)^alpha + ((1-g)/2)^alpha]^(1/alpha)

per setting; the Shannon and min-entropy cases are its limits.  All
logarithms are base 2 and ``0 log 0 = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RenyiOrder:
    """Entropy order tag: Shannon, a finite order ``alpha > 1``, or min-entropy."""

    kind: str
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("shannon", "finite", "min"):
            raise ValueError(f"unknown entropy order kind {self.kind!r}")
        if self.kind == "finite":
            if self.alpha is None or not self.alpha > 1.0:
                raise ValueError("finite Renyi order requires alpha > 1")
        elif self.alpha is not None:
            raise ValueError(f"{self.kind} order takes no alpha parameter")

    @classmethod
    def shannon(cls) -> "RenyiOrder":
        return cls(kind="shannon")

    @classmethod
    def finite(cls, alpha: float) -> "RenyiOrder":
        return cls(kind="finite", alpha=float(alpha))

    @classmethod
    def min_entropy(cls) -> "RenyiOrder":
        return cls(kind="min")

    @classmethod
    def parse(cls, text: str) -> "RenyiOrder":
        """Parse an order spec: ``"shannon"``, ``"inf"`` or a decimal > 1."""
        text = text.strip().lower()
        if text == "shannon":
            return cls.shannon()
        if text == "inf":
            return cls.min_entropy()
        try:
            alpha = float(text)
        except ValueError:
            raise ValueError(f"unrecognised entropy order {text!r}") from None
        return cls.finite(alpha)

    def label(self) -> str:
        if self.kind == "shannon":
            return "shannon"
        if self.kind == "min":
            return "inf"
        return format(self.alpha, ".12g")


SHANNON = RenyiOrder.shannon()
MIN_ENTROPY = RenyiOrder.min_entropy()


def _h_bits(p: np.ndarray) -> np.ndarray:
    """Binary entropy on arrays, no domain checks, 0 log 0 = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    for q in (p, 1.0 - p):
        inside = (q > 0.0) & (q < 1.0)
        out = out - np.where(inside, q * np.log2(np.where(inside, q, 0.5)), 0.0)
    return out


def binary_entropy(p: float) -> float:
    """``h(p) = -p log2 p - (1-p) log2 (1-p)`` in bits; 0 at both endpoints."""
    p = float(p)
    if not -1e-12 <= p <= 1.0 + 1e-12:
        raise ValueError(f"probability {p} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    return float(_h_bits(np.asarray(p)))


def w_alpha(order: RenyiOrder, g: float) -> float:
    """The per-setting weight ``w_alpha(g)``; for min-entropy, ``(1+|g|)/2``."""
    g = float(g)
    if abs(g) > 1.0 + 1e-12:
        raise ValueError(f"expectation value {g} outside [-1, 1]")
    g = min(max(g, -1.0), 1.0)
    if order.kind == "min":
        return (1.0 + abs(g)) / 2.0
    if order.kind != "finite":
        raise ValueError("w_alpha is defined for finite orders and min-entropy")
    a = order.alpha
    return float((((1.0 + g) / 2.0) ** a + ((1.0 - g) / 2.0) ** a) ** (1.0 / a))


@dataclass(frozen=True)
class JointDistribution:
    """``probs[x, k] = Pr[X=x, K=k]`` with the setting marginal uniform."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=float)
        if probs.ndim != 2 or probs.shape[0] != 2 or probs.shape[1] < 1:
            raise ValueError(f"expected a (2, M) table, got {probs.shape}")
        if np.any(probs < -1e-12):
            raise ValueError("negative probability entry")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities do not sum to 1")
        k_marginal = probs.sum(axis=0)
        if np.max(np.abs(k_marginal - 1.0 / probs.shape[1])) > 1e-12:
            raise ValueError("setting marginal is not uniform")
        probs = np.clip(probs, 0.0, None)
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def m(self) -> int:
        return self.probs.shape[1]


def dist_from_g(g: np.ndarray) -> JointDistribution:
    """The joint distribution induced by an expectation vector ``g``."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or g.size < 1:
        raise ValueError("expected a non-empty expectation vector")
    if np.max(np.abs(g)) > 1.0 + 1e-12:
        raise ValueError("expectation values must lie in [-1, 1]")
    g = np.clip(g, -1.0, 1.0)
    m = g.size
    probs = np.vstack([(1.0 + g) / 2.0, (1.0 - g) / 2.0]) / m
    return JointDistribution(probs=probs)


def renyi_cond_entropy(order: RenyiOrder, dist: JointDistribution) -> float:
    """Conditional entropy ``H_alpha(X | K)`` in bits.

    Shannon: ``sum_k p_k h(p(0|k))``.  Finite ``alpha``:
    ``(alpha/(1-alpha)) log2 sum_k p_k (sum_x p(x|k)^alpha)^(1/alpha)``
    (the Arimoto form).  Min-entropy: ``-log2 sum_k p_k max_x p(x|k)``.
    """
    probs = dist.probs
    p_k = probs.sum(axis=0)
    live = p_k > 0.0
    cond = probs[:, live] / p_k[live]
    pk = p_k[live]

    if order.kind == "shannon":
        return float(np.sum(pk * _h_bits(cond[0])))
    if order.kind == "min":
        return float(-np.log2(np.sum(pk * np.max(cond, axis=0))))
    a = order.alpha
    inner = np.sum(cond**a, axis=0) ** (1.0 / a)
    return float(a / (1.0 - a) * np.log2(np.sum(pk * inner)))


def cond_entropy_of_g(order: RenyiOrder, g: np.ndarray) -> np.ndarray:
    """Vectorised ``H_alpha(X|K)`` for expectation vectors in the last axis.

    Direct evaluation of the uniform-setting form; agrees with
    :func:`renyi_cond_entropy` of :func:`dist_from_g` row by row but is
    suitable for large sample batches.
    """
    g = np.clip(np.asarray(g, dtype=float), -1.0, 1.0)
    if order.kind == "shannon":
        return np.mean(_h_bits((1.0 + g) / 2.0), axis=-1)
    if order.kind == "min":
        return -np.log2(np.mean((1.0 + np.abs(g)) / 2.0, axis=-1))
    a = order.alpha
    w = (((1.0 + g) / 2.0) ** a + ((1.0 - g) / 2.0) ** a) ** (1.0 / a)
    return a / (1.0 - a) * np.log2(np.mean(w, axis=-1))


def taylor_coefficient(k: int, alpha: float) -> float:
    """Series coefficient ``c_k(alpha)`` controlling curvature of ``w_alpha``.

    ``c_k = [(alpha-1) 3^k + 1 + alpha - 2 (2 alpha - 1)^k] / (2 k!)``; the
    ``k = 1`` coefficient vanishes identically, and the sign pattern of the
    odd coefficients at ``alpha = 3/2`` and ``alpha = 2`` marks the edges of
    the convex and concave regimes.
    """
    if k < 0:
        raise ValueError("coefficient index must be non-negative")
    alpha = float(alpha)
    numer = (alpha - 1.0) * 3.0**k + 1.0 + alpha - 2.0 * (2.0 * alpha - 1.0) ** k
    return numer / (2.0 * math.factorial(k))


@dataclass(frozen=True)
class CurvatureWitness:
    """Extremes of raw centred second differences of ``t -> w_alpha(sqrt t)``."""

    alpha: float
    grid_size: int
    step: float
    min_second_diff: float
    max_second_diff: float
    argmin_t: float
    argmax_t: float


def convexity_witness(alpha: float, grid_size: int = 2001) -> CurvatureWitness:
    """Probe convexity of ``t -> w_alpha(sqrt t)`` on ``[1e-4, 1 - 1e-4]``.

    Uses raw (unnormalised) centred second differences with step ``1e-4``;
    a non-negative minimum certifies convexity on the grid, a non-positive
    maximum concavity.  Raw differences keep the round-off floor near 1e-15,
    far below the +-1e-8 decision band.
    """
    if grid_size < 3:
        raise ValueError("grid too small to witness curvature")
    a = float(alpha)
    if not a > 1.0:
        raise ValueError("curvature witness applies to finite orders alpha > 1")
    delta = 1e-4
    step = 1e-4
    t = np.linspace(delta, 1.0 - delta, grid_size)

    def f(tt: np.ndarray) -> np.ndarray:
        x = np.sqrt(np.clip(tt, 0.0, 1.0))
        return (((1.0 + x) / 2.0) ** a + ((1.0 - x) / 2.0) ** a) ** (1.0 / a)

    second = f(t + step) - 2.0 * f(t) + f(t - step)
    i_min = int(np.argmin(second))
    i_max = int(np.argmax(second))
    return CurvatureWitness(
        alpha=a,
        grid_size=grid_size,
        step=step,
        min_second_diff=float(second[i_min]),
        max_second_diff=float(second[i_max]),
        argmin_t=float(t[i_min]),
        argmax_t=float(t[i_max]),
    )
