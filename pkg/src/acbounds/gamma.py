"""Pairwise anti-commuting observable sets and the states that probe them.

The workhorse construction is the qubit-chain (Jordan-Wigner style) family:
for ``m`` observables it emits, per qubit ``p`` of an ``n``-qubit register,

    G(2p-1) = Z ... Z X I ... I        (X in slot p)
    G(2p)   = Z ... Z Y I ... I        (Y in slot p)

and, when ``m`` is odd, the final operator ``Z^(x n)``.  All operators are
Hermitian, square to the identity, are traceless and pairwise anti-commute
exactly; the register size ``n = m // 2`` realises the minimal dimension
``2^ceil((m-1)/2)`` (with the convention that a single observable lives on
one qubit as Z).

A "binary observable" throughout the package is a Hermitian matrix whose
square is the identity; generalised (non-projective) effective observables
relax the square to ``c * I`` with ``0 < c <= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from . import matcore

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

#: tolerance on anti-commutators and operator squares for a valid GammaSet
GAMMA_TOL = 1e-12

#: tolerance on the PSD check of a density matrix
STATE_PSD_TOL = 1e-9


def _chain(factors: list[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class GammaSet:
    """An ordered set of pairwise anti-commuting binary observables."""

    operators: tuple[np.ndarray, ...]
    dim: int

    @property
    def m(self) -> int:
        return len(self.operators)

    def validate(self, tol: float = GAMMA_TOL) -> None:
        """Raise unless every invariant of the set holds within ``tol``."""
        eye = np.eye(self.dim)
        ops = self.operators
        for i, g in enumerate(ops):
            if g.shape != (self.dim, self.dim):
                raise ValueError(f"operator {i} has shape {g.shape}")
            if np.max(np.abs(g - g.conj().T)) > tol:
                raise ValueError(f"operator {i} is not Hermitian")
            if np.max(np.abs(g @ g - eye)) > tol:
                raise ValueError(f"operator {i} does not square to identity")
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                anti = ops[i] @ ops[j] + ops[j] @ ops[i]
                if np.max(np.abs(anti)) > tol:
                    raise ValueError(f"operators {i},{j} do not anti-commute")


@lru_cache(maxsize=None)
def build_gamma_set(m: int) -> GammaSet:
    """Construct the ``m``-element anti-commuting set on its minimal dimension.

    ``m = 1`` returns ``[Z]`` on a single qubit; even ``m`` uses ``m/2``
    qubits and discards the final all-Z operator of the odd chain.
    """
    if m < 1:
        raise ValueError("need at least one observable")
    if m == 1:
        return GammaSet(operators=(_freeze(PAULI_Z.copy()),), dim=2)
    n = m // 2
    ops: list[np.ndarray] = []
    for p in range(n):
        prefix = [PAULI_Z] * p
        suffix = [np.eye(2, dtype=complex)] * (n - p - 1)
        ops.append(_chain(prefix + [PAULI_X] + suffix))
        ops.append(_chain(prefix + [PAULI_Y] + suffix))
    if m % 2 == 1:
        ops.append(_chain([PAULI_Z] * n))
    gs = GammaSet(operators=tuple(_freeze(o) for o in ops[:m]), dim=2**n)
    gs.validate()
    return gs


@dataclass(frozen=True)
class QuantumState:
    """A density matrix: Hermitian, PSD and unit trace (checked on build)."""

    rho: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(f"density matrix shape {rho.shape} != dim {self.dim}")
        if not matcore.is_hermitian(rho):
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(rho).real - 1.0) > 1e-12:
            raise ValueError("density matrix trace is not 1")
        if not matcore.is_psd(rho, tol=STATE_PSD_TOL):
            raise ValueError("density matrix is not PSD")
        object.__setattr__(self, "rho", _freeze(rho))

    def min_eigenvalue(self) -> float:
        w, _ = matcore.eigh_herm(self.rho)
        return float(w[0])


def state_from_bloch(x: np.ndarray, gammas: GammaSet) -> QuantumState:
    """Build ``rho = (I + sum_j x_j G_j) / d`` from generalised Bloch data.

    Valid iff ``sum x_j^2 <= 1`` (up to 1e-12 slack); outside that ball the
    matrix has a negative eigenvalue and is rejected.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.size != gammas.m:
        raise ValueError(f"expected {gammas.m} Bloch components, got {x.shape}")
    nrm2 = float(x @ x)
    if nrm2 > 1.0 + 1e-12:
        raise ValueError(f"Bloch vector norm^2 = {nrm2:.6g} exceeds 1")
    d = gammas.dim
    rho = np.eye(d, dtype=complex)
    for xj, g in zip(x, gammas.operators):
        rho = rho + xj * g
    return QuantumState(rho=rho / d, dim=d)


def expectation(state: QuantumState, obs: np.ndarray) -> float:
    """``tr(rho O)`` for a Hermitian observable (real part returned)."""
    obs = np.asarray(obs)
    if obs.shape != (state.dim, state.dim):
        raise ValueError(f"observable shape {obs.shape} != state dim {state.dim}")
    return float(np.einsum("ij,ji->", state.rho, obs).real)


def is_binary_observable(o: np.ndarray, tol: float = 1e-10) -> bool:
    """Hermitian and squares to the identity, both within ``tol``."""
    o = np.asarray(o)
    if o.ndim != 2 or o.shape[0] != o.shape[1]:
        return False
    if np.max(np.abs(o - o.conj().T)) > tol:
        return False
    return bool(np.max(np.abs(o @ o - np.eye(o.shape[0]))) <= tol)


def random_projective_observable(dim: int, rng: np.random.Generator) -> np.ndarray:
    """A random binary observable ``V diag(+-1) V*`` on ``dim`` dimensions."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    _, v = matcore.eigh_herm((g + g.conj().T) / 2.0)
    signs = np.where(rng.random(dim) < 0.5, -1.0, 1.0)
    return (v * signs) @ v.conj().T


def random_bloch_state(gammas: GammaSet, rng: np.random.Generator) -> QuantumState:
    """A state uniform over the generalised Bloch ball of ``gammas``."""
    u = rng.standard_normal(gammas.m)
    u = u / np.sqrt(u @ u)
    radius = rng.random() ** (1.0 / gammas.m)
    return state_from_bloch(radius * u, gammas)
