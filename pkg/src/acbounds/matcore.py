"""Dense matrix utilities for small symmetric/Hermitian problems.

Everything in this package moves through plain numpy arrays: real symmetric
matrices are float64 ``(n, n)`` arrays, operators are complex128.  The
eigensolver is a cyclic Jacobi iteration rather than a LAPACK call: it is
deterministic down to the last bit for a given input, has no tuning knobs,
and is entirely adequate for the dimensions this package touches (n <= 256).

Convention: eigenvalues are returned in ascending order, eigenvectors as
columns, with a fixed sign/phase normalisation so repeated calls are
bit-identical.
"""

from __future__ import annotations

import math

import numpy as np

#: default tolerance for numerical-rank and PSD decisions
RANK_TOL = 1e-9

#: default tolerance for Hermitian symmetry checks
HERMITIAN_TOL = 1e-10

_MAX_SWEEPS = 60


def _as_square(m: np.ndarray, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"{name} must be square, got shape {m.shape}")
    return m


def eigh_sym(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi.

    Parameters
    ----------
    a:
        Real symmetric ``(n, n)`` array.  The input is symmetrised
        (``(a + a.T) / 2``) before iterating, so tiny asymmetries from
        accumulated round-off are tolerated.

    Returns
    -------
    (w, v):
        Eigenvalues ``w`` ascending and an orthogonal matrix ``v`` whose
        columns are the matching eigenvectors.  Each column is normalised so
        its largest-magnitude component is positive.
    """
    a = np.array(_as_square(a), dtype=float)
    if np.iscomplexobj(a):  # pragma: no cover - dtype forced above
        raise ValueError("eigh_sym expects a real matrix")
    n = a.shape[0]
    a = (a + a.T) / 2.0
    v = np.eye(n)
    if n == 1:
        return a[0, :1].copy(), v

    stop = 1e-14 * max(1.0, float(np.max(np.abs(a))))
    for _ in range(_MAX_SWEEPS):
        off = np.max(np.abs(a - np.diag(np.diag(a))))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        k = int(np.argmax(np.abs(v[:, j])))
        if v[k, j] < 0.0:
            v[:, j] = -v[:, j]
    return w, v


def eigh_herm(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi.

    Same contract as :func:`eigh_sym` but over complex entries; the returned
    eigenvector matrix is unitary and each column's largest-magnitude
    component is made real positive.
    """
    a = np.array(_as_square(a), dtype=complex)
    n = a.shape[0]
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    if n == 1:
        return a[0, :1].real.copy(), v

    stop = 1e-14 * max(1.0, float(np.max(np.abs(a))))
    for _ in range(_MAX_SWEEPS):
        off = np.max(np.abs(a - np.diag(np.diag(a))))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        k = int(np.argmax(np.abs(v[:, j])))
        piv = v[k, j]
        if abs(piv) > 0.0:
            v[:, j] = v[:, j] * (np.conj(piv) / abs(piv))
    return w, v


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    """True iff ``m`` equals its conjugate transpose entrywise within ``tol``."""
    m = _as_square(m)
    return bool(np.max(np.abs(m - np.conj(m.T))) <= tol)


def is_psd(m: np.ndarray, tol: float = RANK_TOL) -> bool:
    """True iff Hermitian ``m`` is positive semidefinite within tolerance.

    The test is ``min eigenvalue >= -tol * max(1, ||m||)``.  Raises if the
    input is not Hermitian to begin with (that is a usage error, not a
    negative answer).
    """
    m = _as_square(m)
    if not is_hermitian(m, tol=max(tol, HERMITIAN_TOL)):
        raise ValueError("is_psd expects a Hermitian matrix")
    if np.iscomplexobj(m):
        w, _ = eigh_herm(m)
    else:
        w, _ = eigh_sym(m)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    return bool(w[0] >= -tol * scale)


def spectral_norm(t: np.ndarray) -> float:
    """Largest absolute eigenvalue of a real symmetric matrix."""
    t = np.asarray(t, dtype=float)
    w, _ = eigh_sym(t)
    return float(np.max(np.abs(w)))


def rank_factor(t: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Factor a PSD real symmetric ``t`` as ``R @ R.T`` with full column rank.

    Columns of ``R`` correspond to the eigenvalues of ``t`` that clear the
    numerical-rank threshold ``tol * max(1, largest eigenvalue)``, taken in
    descending order, so ``R`` has shape ``(n, rank)``.

    Raises ``ValueError`` when ``t`` has an eigenvalue below the negative of
    the same threshold (i.e. is not PSD).
    """
    t = np.asarray(t, dtype=float)
    w, v = eigh_sym(t)
    scale = max(1.0, float(w[-1]) if w.size else 0.0)
    cut = tol * scale
    if w.size and w[0] < -cut:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e}")
    keep = np.nonzero(w >= cut)[0][::-1]  # descending eigenvalue order
    return v[:, keep] * np.sqrt(w[keep])


def left_inverse(r_mat: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Moore-Penrose left inverse ``(R^T R)^{-1} R^T`` of a tall factor.

    Requires ``r_mat`` to have full column rank; raises ``ValueError`` when
    the Gram matrix is numerically singular at ``tol`` (relative to its
    largest eigenvalue).
    """
    r_mat = np.asarray(r_mat, dtype=float)
    if r_mat.ndim != 2:
        raise ValueError("left_inverse expects a 2-d array")
    gram = r_mat.T @ r_mat
    w, v = eigh_sym(gram)
    scale = max(1.0, float(w[-1]) if w.size else 0.0)
    if w.size == 0 or w[0] <= tol * scale:
        raise ValueError("rank-deficient factor has no left inverse")
    inv = (v / w) @ v.T
    return inv @ r_mat.T


def psd_sqrt_sym(t: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Symmetric square root of a PSD real symmetric matrix."""
    t = np.asarray(t, dtype=float)
    w, v = eigh_sym(t)
    scale = max(1.0, float(w[-1]) if w.size else 0.0)
    if w.size and w[0] < -tol * scale:
        raise ValueError(f"matrix is not PSD: min eigenvalue {w[0]:.3e}")
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product (thin wrapper kept for a single import surface)."""
    return np.kron(a, b)
