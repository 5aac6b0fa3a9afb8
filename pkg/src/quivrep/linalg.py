"""Deterministic dense linear algebra helpers shared by the whole package.

All basis-producing routines normalize the phase of every basis vector so
that its largest-magnitude entry is real positive; combined with LAPACK's
deterministic factorizations this makes repeated runs byte-identical.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .config import settings


def phase_normalize(columns: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    out = np.array(columns, dtype=complex, copy=True)
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        z = col[k]
        if abs(z) > 0:
            out[:, j] = col * (np.conj(z) / abs(z))
    return out


def svd_cutoff(singular_values, shape) -> float:
    """Threshold below which a singular value counts as zero."""
    if len(singular_values) == 0:
        return 0.0
    return float(singular_values[0]) * max(shape) * settings.svd_factor


def real_if_exact(a: np.ndarray) -> np.ndarray:
    """The real view of a complex array whose imaginary part is exactly zero.

    Rank and nullity do not depend on the scalar field, and a real-field SVD
    is several times cheaper than a complex one, so factorizations switch to
    the real path whenever nothing imaginary is present.
    """
    if np.iscomplexobj(a) and not a.imag.any():
        return a.real
    return a


def matrix_rank(a) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(real_if_exact(a), compute_uv=False)
    return int(np.sum(s > svd_cutoff(s, a.shape)))


def nullspace_with_values(a) -> tuple[np.ndarray, np.ndarray]:
    """(singular values, orthonormal nullspace columns) from one factorization."""
    a = np.asarray(a, dtype=complex)
    rows, cols = a.shape
    if cols == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)
    if rows == 0:
        return np.zeros(0), np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(real_if_exact(a))
    rank = int(np.sum(s > svd_cutoff(s, a.shape)))
    return s, phase_normalize(np.asarray(vh, dtype=complex)[rank:].conj().T)


def nullspace(a) -> np.ndarray:
    """Orthonormal columns spanning ker(a), deterministically normalized."""
    return nullspace_with_values(a)[1]


def orth(a) -> np.ndarray:
    """Orthonormal basis of the column space of `a` (rank-revealing)."""
    a = np.asarray(a, dtype=complex)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(real_if_exact(a), full_matrices=False)
    rank = int(np.sum(s > svd_cutoff(s, a.shape)))
    return phase_normalize(u[:, :rank])


def qr_orthonormalize(a) -> np.ndarray:
    """Orthonormalize the columns of a full-column-rank matrix (plain QR, no pivoting)."""
    a = np.asarray(a, dtype=complex)
    if a.shape[1] == 0:
        return a.copy()
    q, r = np.linalg.qr(a)
    d = np.abs(np.diagonal(r))
    if np.min(d) <= np.max(d) * settings.tol:
        raise ValueError(
            f"columns are numerically dependent (diagonal ratio {np.min(d) / max(np.max(d), 1e-300):.2e})"
        )
    return phase_normalize(q)


def is_invertible(a, tol: float | None = None) -> bool:
    """Square matrix invertibility via sigma_min > tol * sigma_max; 0x0 counts as invertible."""
    a = np.asarray(a)
    n, m = a.shape
    if n != m:
        return False
    if n == 0:
        return True
    t = settings.tol if tol is None else tol
    s = np.linalg.svd(real_if_exact(a), compute_uv=False)
    if s[0] == 0.0:
        return False
    return bool(s[-1] > t * s[0])


def left_mult_matrix(c, ncols: int) -> np.ndarray:
    """M with M @ vec(T) = vec(C @ T) for row-major vec and T with `ncols` columns."""
    return np.kron(np.asarray(c, dtype=complex), np.eye(ncols))


def right_mult_matrix(b, nrows: int) -> np.ndarray:
    """M with M @ vec(T) = vec(T @ B) for row-major vec and T with `nrows` rows."""
    return np.kron(np.eye(nrows), np.asarray(b, dtype=complex).T)


def cluster_eigenvalues(eigs, rel_gap: float | None = None) -> list[list[int]]:
    """Single-linkage clusters of complex eigenvalues.

    Two eigenvalues join the same cluster when their distance is at most
    rel_gap * spectral radius.  A zero spectral radius yields one cluster.
    Clusters are returned ordered by their lexicographically smallest member
    (real part, then imaginary part); each cluster lists member indices.
    """
    eigs = np.asarray(eigs)
    m = len(eigs)
    if m == 0:
        return []
    gap = (settings.cluster_gap if rel_gap is None else rel_gap) * float(np.max(np.abs(eigs)))

    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(eigs[i] - eigs[j]) <= gap:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)

    def sort_key(members):
        vals = [(eigs[i].real, eigs[i].imag) for i in members]
        return min(vals)

    return sorted(groups.values(), key=sort_key)


def spectral_projection(a, select) -> np.ndarray:
    """Spectral projection of `a` onto the eigenvalues picked by `select(z) -> bool`.

    Computed from the sorted complex Schur form: with the selected block leading,
    T = [[T11, T12], [0, T22]], the projection is Q [[I, Y], [0, 0]] Q* where
    T11 Y - Y T22 = T12.  `select` must separate the spectrum cleanly.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    t, q, k = scipy.linalg.schur(a, output="complex", sort=select)
    k = int(k)
    if k == 0:
        return np.zeros((n, n), dtype=complex)
    if k == n:
        return np.eye(n, dtype=complex)
    t11, t12, t22 = t[:k, :k], t[:k, k:], t[k:, k:]
    y = scipy.linalg.solve_sylvester(t11, -t22, t12)
    p = np.zeros((n, n), dtype=complex)
    p[:k, :k] = np.eye(k)
    p[:k, k:] = y
    return q @ p @ q.conj().T
