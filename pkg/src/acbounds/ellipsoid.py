"""The feasible set of expectation vectors and its explicit realisations.

For binary observables ``A_1..A_M`` and a state ``rho``, the matrix

    T[j, k] = tr({A_j, A_k} rho) / 2

is symmetric, PSD, has ``<A_j^2>`` on the diagonal (1 for projective
measurements) and - remarkably - does not depend on the state at all when
the operators' anti-commutators are proportional to the identity.  The
expectation vector ``g_j = tr(A_j rho)`` is constrained by the matrix
inequality ``g g^T <= T``: an ellipsoid.  That condition is not only
necessary but sufficient: every feasible ``(g, T)`` pair is realised by an
explicit state and observables built on an anti-commuting operator basis,
which is what :func:`construct_realization` returns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore
from .gamma import GammaSet, QuantumState, build_gamma_set, expectation, state_from_bloch

#: feasibility tolerance on the minimum eigenvalue of T - g g^T
FEASIBILITY_TOL = 1e-9

#: tolerance for the internal verification of a constructed realisation
CONSTRUCTION_TOL = 1e-9
CONSTRUCTION_RANK_CUT = 1e-14


class InfeasibleError(ValueError):
    """The requested expectation vector lies outside its ellipsoid."""


class RealizationError(RuntimeError):
    """A constructed realisation failed its own consistency check."""


def effective_anticommutators(
    state: QuantumState, observables: list[np.ndarray] | tuple[np.ndarray, ...]
) -> np.ndarray:
    """The matrix ``T[j,k] = tr({A_j, A_k} rho) / 2``, exactly symmetric."""
    obs = [np.asarray(a) for a in observables]
    m = len(obs)
    if m == 0:
        raise ValueError("need at least one observable")
    for a in obs:
        if a.shape != (state.dim, state.dim):
            raise ValueError("observable dimension does not match state")
    t = np.empty((m, m))
    for j in range(m):
        for k in range(j, m):
            val = np.einsum("ij,ji->", state.rho, obs[j] @ obs[k]).real
            if j == k:
                t[j, j] = val
            else:
                # average with the transposed product: exact symmetrisation
                val2 = np.einsum("ij,ji->", state.rho, obs[k] @ obs[j]).real
                t[j, k] = t[k, j] = (val + val2) / 2.0
    return t


def expectation_vector(
    state: QuantumState, observables: list[np.ndarray] | tuple[np.ndarray, ...]
) -> np.ndarray:
    """``g_j = tr(A_j rho)`` stacked into a vector."""
    return np.array([expectation(state, a) for a in observables])


def check_anticommutation_matrix(t: np.ndarray, tol: float = FEASIBILITY_TOL) -> np.ndarray:
    """Validate and return a well-formed anti-commutation matrix.

    Requires exact symmetry (to 1e-12), diagonal entries in ``(0, 1]`` and
    positive semidefiniteness within ``tol``.
    """
    t = np.asarray(t, dtype=float)
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise ValueError(f"anti-commutation matrix must be square, got {t.shape}")
    if np.max(np.abs(t - t.T)) > 1e-12:
        raise ValueError("anti-commutation matrix is not symmetric")
    d = np.diag(t)
    if np.any(d <= 0.0) or np.any(d > 1.0 + 1e-12):
        raise ValueError("diagonal entries must lie in (0, 1]")
    if not matcore.is_psd(t, tol=tol):
        raise ValueError("anti-commutation matrix is not PSD")
    return t


def check_ellipsoid(g: np.ndarray, t: np.ndarray, tol: float = FEASIBILITY_TOL) -> bool:
    """True iff ``t - g g^T`` is PSD within ``tol`` (feasibility of ``g``)."""
    g = np.asarray(g, dtype=float)
    t = np.asarray(t, dtype=float)
    if g.ndim != 1 or t.shape != (g.size, g.size):
        raise ValueError("shape mismatch between expectation vector and matrix")
    gap = (t + t.T) / 2.0 - np.outer(g, g)
    w, _ = matcore.eigh_sym(gap)
    return bool(w[0] >= -tol)


def min_dimension(t: np.ndarray, tol: float = matcore.RANK_TOL) -> tuple[int, int]:
    """Numerical rank of ``t`` and the minimal realising dimension.

    The dimension is ``2^ceil((rank-1)/2)``, with the single-observable
    convention that rank 1 still needs a qubit (dimension 2).
    """
    t = np.asarray(t, dtype=float)
    w, _ = matcore.eigh_sym(t)
    scale = max(1.0, float(w[-1]) if w.size else 0.0)
    rank = int(np.sum(w >= tol * scale))
    if rank == 0:
        return 0, 1
    dim = 2 if rank == 1 else 2 ** math.ceil((rank - 1) / 2)
    return rank, dim


@dataclass(frozen=True)
class Realization:
    """An explicit ``(state, observables)`` pair reproducing ``(g, T)``."""

    state: QuantumState
    observables: tuple[np.ndarray, ...]
    bloch: np.ndarray
    gammas: GammaSet
    rank: int

    @property
    def dim(self) -> int:
        return self.state.dim


def construct_realization(
    g: np.ndarray, t: np.ndarray, tol: float = FEASIBILITY_TOL
) -> Realization:
    """Realise a feasible ``(g, T)`` pair on the minimal dimension.

    Writes ``T = R R^T``, sets ``A_j = sum_i R[j,i] G_i`` over an
    anti-commuting basis ``G`` and prepares the generalised Bloch state with
    ``x`` equal to the left-inverse of ``R`` applied to ``g``.  The result is
    re-measured before returning; any mismatch beyond the construction
    tolerance raises :class:`RealizationError` rather than being absorbed.

    The factorisation keeps eigendirections down to machine scale rather
    than the coarser classification cut of :func:`min_dimension`: a genuine
    eigenvalue of size 1e-10 may carry a 1e-5 share of ``g``, which a
    truncated factor could never reproduce.

    Raises :class:`InfeasibleError` when ``g g^T <= T`` fails within ``tol``.
    """
    t = check_anticommutation_matrix(t)
    g = np.asarray(g, dtype=float)
    if not check_ellipsoid(g, t, tol=tol):
        raise InfeasibleError("expectation vector violates g g^T <= T")

    r_factor = matcore.rank_factor(t, tol=CONSTRUCTION_RANK_CUT)
    rank = r_factor.shape[1]
    gammas = build_gamma_set(rank)
    observables = tuple(
        sum(r_factor[j, i] * gammas.operators[i] for i in range(rank))
        for j in range(t.shape[0])
    )
    x = matcore.left_inverse(r_factor, tol=CONSTRUCTION_RANK_CUT / 10.0) @ g
    nrm2 = float(x @ x)
    if nrm2 > 1.0:
        if nrm2 > 1.0 + 1e-9:
            raise RealizationError(
                f"feasible input mapped outside the Bloch ball (norm^2 = {nrm2:.12g})"
            )
        x = x / math.sqrt(nrm2)
    state = state_from_bloch(x, gammas)

    t_back = effective_anticommutators(state, observables)
    g_back = expectation_vector(state, observables)
    err = max(float(np.max(np.abs(t_back - t))), float(np.max(np.abs(g_back - g))))
    if err > CONSTRUCTION_TOL:
        raise RealizationError(f"realisation reproduces inputs only to {err:.3e}")
    return Realization(
        state=state, observables=observables, bloch=x, gammas=gammas, rank=rank
    )


def ellipse_boundary(epsilon: float, points: int) -> np.ndarray:
    """Boundary of the two-observable feasible region for anti-commutator ``epsilon``.

    Returns ``(points, 2)`` samples of ``{g : g^T T^{-1} g = 1}`` for
    ``T = [[1, eps], [eps, 1]]``.  For ``|eps| = 1`` the ellipse collapses to
    the segment ``g_2 = sign(eps) g_1``; points are then spread along it.
    """
    epsilon = float(epsilon)
    if abs(epsilon) > 1.0 + 1e-12:
        raise ValueError("effective anti-commutator must lie in [-1, 1]")
    if points < 3:
        raise ValueError("need at least three boundary points")
    if abs(epsilon) >= 1.0 - 1e-15:
        s = np.linspace(-1.0, 1.0, points)
        return np.column_stack([s, math.copysign(1.0, epsilon) * s])
    theta = np.linspace(0.0, 2.0 * math.pi, points, endpoint=False)
    a = math.sqrt(1.0 + epsilon) * np.cos(theta) / math.sqrt(2.0)
    b = math.sqrt(1.0 - epsilon) * np.sin(theta) / math.sqrt(2.0)
    pts = np.column_stack([a + b, a - b])
    return np.clip(pts, -1.0, 1.0)
