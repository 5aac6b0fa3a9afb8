"""Representations of quivers on finite-dimensional complex Hilbert spaces.

A representation assigns dim(v) >= 0 to every vertex and a complex matrix of
shape (dim(dst), dim(src)) to every arrow.  Zero-dimensional vertices are
first-class: their matrices are empty and all operations treat them uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .config import settings
from .errors import PreconditionError
from .quiver import Quiver, _label


@dataclass(frozen=True)
class Rep:
    quiver: Quiver
    dims: dict[str, int]
    mats: dict[str, np.ndarray]

    def dim(self, v) -> int:
        return self.dims[_label(v)]

    def mat(self, arrow_name: str) -> np.ndarray:
        return self.mats[arrow_name]

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.quiver.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    @property
    def is_zero(self) -> bool:
        return self.total_dim == 0


def new_rep(q: Quiver, dims, mats=None) -> Rep:
    """Validate and build a representation.

    `dims` maps vertices to dimensions (missing vertices get 0).  `mats` maps
    arrow names to matrices; an arrow may be omitted only when either endpoint
    has dimension 0 (the matrix is then the empty one).  Entries must be finite.
    """
    dims = {_label(v): int(d) for v, d in dict(dims).items()}
    for v in dims:
        if v not in q.vertices:
            raise ValueError(f"dims mentions unknown vertex {v!r}")
        if dims[v] < 0:
            raise ValueError(f"dim({v}) = {dims[v]} is negative")
    full_dims = {v: dims.get(v, 0) for v in q.vertices}

    mats = {} if mats is None else dict(mats)
    out: dict[str, np.ndarray] = {}
    known = {a.name for a in q.arrows}
    for name in mats:
        if name not in known:
            raise ValueError(f"mats mentions unknown arrow {name!r}")
    for a in q.arrows:
        rows, cols = full_dims[a.dst], full_dims[a.src]
        if a.name not in mats:
            if rows and cols:
                raise ValueError(f"missing matrix for arrow {a.name!r} ({rows}x{cols})")
            out[a.name] = np.zeros((rows, cols), dtype=complex)
            continue
        m = np.asarray(mats[a.name], dtype=complex)
        if m.size == 0 and rows * cols == 0:
            m = np.zeros((rows, cols), dtype=complex)
        if m.shape != (rows, cols):
            raise ValueError(
                f"arrow {a.name!r}: matrix shape {m.shape} != (dim {a.dst!r}, dim {a.src!r}) = {(rows, cols)}"
            )
        if m.size and not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
            raise ValueError(f"arrow {a.name!r}: matrix has non-finite entries")
        out[a.name] = m.copy()
    return Rep(q, full_dims, out)


def zero_rep(q: Quiver) -> Rep:
    return new_rep(q, {})


def direct_sum(r1: Rep, r2: Rep) -> Rep:
    """Block-diagonal direct sum of two representations of the same quiver."""
    if r1.quiver != r2.quiver:
        raise ValueError("direct sum needs two representations of the same quiver")
    q = r1.quiver
    dims = {v: r1.dims[v] + r2.dims[v] for v in q.vertices}
    mats = {}
    for a in q.arrows:
        m = np.zeros((dims[a.dst], dims[a.src]), dtype=complex)
        d1r, d1c = r1.dims[a.dst], r1.dims[a.src]
        m[:d1r, :d1c] = r1.mats[a.name]
        m[d1r:, d1c:] = r2.mats[a.name]
        mats[a.name] = m
    return new_rep(q, dims, mats)


def conjugate(r: Rep, phi: dict) -> Rep:
    """Similarity transform: arrow matrices become phi_dst @ f @ phi_src^{-1}.

    `phi` maps vertices to invertible square matrices; missing vertices get the
    identity.  Singular or mis-shaped blocks are rejected.
    """
    phi = {_label(v): np.asarray(m, dtype=complex) for v, m in dict(phi).items()}
    for v, m in phi.items():
        if v not in r.quiver.vertices:
            raise ValueError(f"phi mentions unknown vertex {v!r}")
        d = r.dims[v]
        if m.shape != (d, d):
            raise ValueError(f"phi[{v}] has shape {m.shape}, expected {(d, d)}")
        if not linalg.is_invertible(m):
            raise PreconditionError(f"phi[{v}] is numerically singular; conjugation needs invertible blocks")
    inv = {}
    for v in r.quiver.vertices:
        d = r.dims[v]
        m = phi.get(v)
        if m is None:
            phi[v] = np.eye(d, dtype=complex)
            inv[v] = np.eye(d, dtype=complex)
        else:
            inv[v] = np.linalg.inv(m) if d else np.zeros((0, 0), dtype=complex)
    mats = {
        a.name: phi[a.dst] @ r.mats[a.name] @ inv[a.src]
        for a in r.quiver.arrows
    }
    return new_rep(r.quiver, dict(r.dims), mats)


# ---------------------------------------------------------------------------
# intertwiners as data


@dataclass
class Hom:
    """A vertex-indexed family of matrices T_v: source_v -> target_v.

    `residual` is the relative intertwining defect
    max over arrows of |T_dst f - g T_src| / (1 + |f||T_dst| + |g||T_src|).
    """

    source: Rep
    target: Rep
    mats: dict[str, np.ndarray]
    residual: float = 0.0

    def mat(self, v) -> np.ndarray:
        return self.mats[_label(v)]

    def norm(self) -> float:
        return float(np.sqrt(sum(np.sum(np.abs(m) ** 2) for m in self.mats.values())))

    def flatten(self) -> np.ndarray:
        """Concatenate the blocks (quiver vertex order, row-major entries)."""
        parts = [self.mats[v].reshape(-1) for v in self.source.quiver.vertices]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=complex)


def hom_residual(source: Rep, target: Rep, mats: dict[str, np.ndarray]) -> float:
    worst = 0.0
    for a in source.quiver.arrows:
        f = source.mats[a.name]
        g = target.mats[a.name]
        td, ts = mats[a.dst], mats[a.src]
        defect = np.linalg.norm(td @ f - g @ ts)
        scale = 1.0 + np.linalg.norm(f) * np.linalg.norm(td) + np.linalg.norm(g) * np.linalg.norm(ts)
        worst = max(worst, float(defect / scale))
    return worst


def make_hom(source: Rep, target: Rep, mats: dict) -> Hom:
    """Package matrices as a Hom, validating shapes and computing the residual."""
    if source.quiver != target.quiver:
        raise ValueError("a hom needs source and target over the same quiver")
    mats = {_label(v): np.asarray(m, dtype=complex) for v, m in dict(mats).items()}
    full = {}
    for v in source.quiver.vertices:
        want = (target.dims[v], source.dims[v])
        m = mats.get(v)
        if m is None:
            m = np.zeros(want, dtype=complex)
        if m.shape != want:
            raise ValueError(f"block {v!r} has shape {m.shape}, expected {want}")
        full[v] = m
    return Hom(source, target, full, hom_residual(source, target, full))


def identity_hom(r: Rep) -> Hom:
    return make_hom(r, r, {v: np.eye(r.dims[v], dtype=complex) for v in r.quiver.vertices})


def hom_compose(second: Hom, first: Hom) -> Hom:
    """second ∘ first (first applies first)."""
    if second.source is not first.target and second.source.dims != first.target.dims:
        raise ValueError("composition needs matching middle representation")
    mats = {v: second.mats[v] @ first.mats[v] for v in first.source.quiver.vertices}
    return make_hom(first.source, second.target, mats)


def hom_lincomb(coeffs, homs: list[Hom]) -> Hom:
    if not homs:
        raise ValueError("need at least one hom")
    src, dst = homs[0].source, homs[0].target
    mats = {
        v: sum(c * h.mats[v] for c, h in zip(coeffs, homs))
        for v in src.quiver.vertices
    }
    return make_hom(src, dst, mats)


def is_invertible_hom(h: Hom, tol: float | None = None) -> bool:
    return all(linalg.is_invertible(h.mats[v], tol) for v in h.source.quiver.vertices)


class Decomposition(NamedTuple):
    first: Rep
    second: Rep
    witness: Hom  # isomorphism direct_sum(first, second) -> original


def decompose_with(r: Rep, e: Hom) -> Decomposition:
    """Split `r` along a nontrivial idempotent endomorphism.

    The two summands are the restrictions of `r` to the ranges of e and 1-e,
    each expressed in a deterministic orthonormal basis.  The witness is the
    basis-assembly isomorphism direct_sum(range, kernel) -> r.
    """
    tol = settings.idem_tol
    sq_defect = max(
        (float(np.linalg.norm(e.mats[v] @ e.mats[v] - e.mats[v])) for v in r.quiver.vertices),
        default=0.0,
    )
    if sq_defect > tol:
        raise PreconditionError(f"not an idempotent: |e^2 - e| = {sq_defect:.3e} > {tol:g}")
    if e.residual > tol:
        raise PreconditionError(f"not an endomorphism: intertwining residual {e.residual:.3e} > {tol:g}")
    total = e.norm()
    if total <= tol:
        raise PreconditionError("e = 0 splits nothing; a nontrivial idempotent is required")
    id_defect = float(
        np.sqrt(
            sum(
                np.linalg.norm(e.mats[v] - np.eye(r.dims[v])) ** 2
                for v in r.quiver.vertices
            )
        )
    )
    if id_defect <= tol:
        raise PreconditionError("e = 1 splits nothing; a nontrivial idempotent is required")

    # Nonzero singular values of an idempotent are >= 1, so 0.5 splits cleanly.
    range_bases, kernel_bases = {}, {}
    for v in r.quiver.vertices:
        d = r.dims[v]
        ev = e.mats[v]
        for store, block in ((range_bases, ev), (kernel_bases, np.eye(d) - ev)):
            if d == 0:
                store[v] = np.zeros((0, 0), dtype=complex)
                continue
            u, s, _ = np.linalg.svd(block)
            k = int(np.sum(s > 0.5))
            store[v] = linalg.phase_normalize(u[:, :k])
        if range_bases[v].shape[1] + kernel_bases[v].shape[1] != d:
            raise PreconditionError(
                f"block {v!r}: range and kernel of e do not fill the space; e is too far from idempotent"
            )

    def restrict(bases):
        dims = {v: bases[v].shape[1] for v in r.quiver.vertices}
        mats = {
            a.name: bases[a.dst].conj().T @ r.mats[a.name] @ bases[a.src]
            for a in r.quiver.arrows
        }
        return new_rep(r.quiver, dims, mats)

    part1 = restrict(range_bases)
    part2 = restrict(kernel_bases)
    summed = direct_sum(part1, part2)
    witness = make_hom(
        summed,
        r,
        {v: np.hstack([range_bases[v], kernel_bases[v]]) for v in r.quiver.vertices},
    )
    return Decomposition(part1, part2, witness)
