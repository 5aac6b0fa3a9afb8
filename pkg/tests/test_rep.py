import numpy as np
import pytest

import quivrep as qr
from conftest import random_rep


def test_new_rep_accepts_consistent_shapes():
    q = qr.kronecker_quiver()
    r = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[1.0]], "b": [[0.0]]})
    assert r.dim_vector == (1, 1)
    r2 = qr.new_rep(q, {"1": 2, "2": 1}, {"a": [[1.0, 0.0]], "b": [[0.0, 1.0]]})
    assert r2.mat("a").shape == (1, 2)


def test_new_rep_rejects_wrong_shape():
    q = qr.kronecker_quiver()
    with pytest.raises(ValueError):
        qr.new_rep(q, {"1": 2, "2": 1}, {"a": np.eye(2), "b": [[0.0, 1.0]]})


def test_new_rep_rejects_nonfinite_entries():
    q = qr.kronecker_quiver()
    with pytest.raises(ValueError):
        qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[np.nan]], "b": [[0.0]]})


def test_new_rep_requires_matrix_when_both_dims_positive():
    q = qr.kronecker_quiver()
    with pytest.raises(ValueError):
        qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[1.0]]})


def test_zero_dim_vertices_get_empty_matrices():
    q = qr.kronecker_quiver()
    r = qr.new_rep(q, {"1": 2, "2": 0})
    assert r.mat("a").shape == (0, 2)
    assert r.mat("b").shape == (0, 2)
    assert not r.is_zero
    assert qr.zero_rep(q).is_zero


def test_direct_sum_blocks():
    q = qr.kronecker_quiver()
    r1 = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[1.0]], "b": [[0.0]]})
    r2 = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[0.0]], "b": [[1.0]]})
    s = qr.direct_sum(r1, r2)
    assert s.dim_vector == (2, 2)
    assert np.array_equal(s.mat("a"), np.diag([1.0, 0.0]).astype(complex))
    assert np.array_equal(s.mat("b"), np.diag([0.0, 1.0]).astype(complex))


def test_direct_sum_with_zero_rep_keeps_matrices():
    q = qr.kronecker_quiver()
    r = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[2.0]], "b": [[3.0]]})
    s = qr.direct_sum(r, qr.zero_rep(q))
    assert s.dim_vector == r.dim_vector
    assert np.array_equal(s.mat("a"), r.mat("a"))


def test_direct_sum_dims_add(rng):
    q = qr.cycle_quiver(3)
    r1 = random_rep(q, {v: int(rng.integers(0, 3)) for v in q.vertices}, rng)
    r2 = random_rep(q, {v: int(rng.integers(0, 3)) for v in q.vertices}, rng)
    s = qr.direct_sum(r1, r2)
    assert s.dim_vector == tuple(x + y for x, y in zip(r1.dim_vector, r2.dim_vector))


def test_conjugate_identity_is_identity(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 2}, rng)
    same = qr.conjugate(r, {v: np.eye(2) for v in ("1", "2")})
    for a in ("a", "b"):
        assert np.allclose(same.mat(a), r.mat(a))


def test_conjugate_round_trip(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 3, "2": 2}, rng)
    phi = {
        "1": rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)),
        "2": rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)),
    }
    back = qr.conjugate(qr.conjugate(r, phi), {v: np.linalg.inv(m) for v, m in phi.items()})
    for a in ("a", "b"):
        assert np.allclose(back.mat(a), r.mat(a), rtol=1e-10, atol=1e-10)


def test_conjugate_rejects_singular_map(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 2}, rng)
    with pytest.raises(qr.PreconditionError):
        qr.conjugate(r, {"1": np.zeros((2, 2)), "2": np.eye(2)})


def test_conjugation_does_not_change_decomposability(rng):
    q = qr.kronecker_quiver()
    for trial in range(50):
        r1 = random_rep(q, {"1": 1, "2": 1}, rng)
        r2 = random_rep(q, {"1": 1, "2": 1}, rng)
        both = qr.direct_sum(r1, r2)
        phi = {v: rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
               for v in ("1", "2")}
        hidden = qr.conjugate(both, phi)
        before = qr.is_indecomposable(both, seed=trial).kind
        after = qr.is_indecomposable(hidden, seed=trial).kind
        assert before == after == "decomposable"


def test_hom_algebra_operations(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 2}, rng)
    eb = qr.end_basis(r)
    ident = qr.identity_hom(r)
    assert qr.hom_compose(ident, ident).residual <= 1e-12
    combo = qr.hom_lincomb([0.5, 0.5j][: eb.dim], eb.basis[: min(2, eb.dim)])
    assert combo.source is r and combo.target is r


def test_decompose_with_recovers_block_structure(rng):
    q = qr.kronecker_quiver()
    r1 = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[1.0]], "b": [[0.0]]})
    r2 = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[0.0]], "b": [[1.0]]})
    both = qr.direct_sum(r1, r2)
    proj = qr.make_hom(both, both, {v: np.diag([1.0, 0.0]).astype(complex) for v in ("1", "2")})
    parts = qr.decompose_with(both, proj)
    assert parts.first.dim_vector == (1, 1)
    assert parts.second.dim_vector == (1, 1)
    assert qr.is_invertible_hom(parts.witness)
    # witness really intertwines: residual of the hom from first+second to both
    assert parts.witness.residual <= 1e-9
    assert qr.find_isomorphism(parts.first, r1, seed=1) is not None
    assert qr.find_isomorphism(parts.second, r2, seed=1) is not None


def test_decompose_with_rejects_trivial_idempotents(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 2}, rng)
    with pytest.raises(qr.PreconditionError):
        qr.decompose_with(r, qr.identity_hom(r))
    zero = qr.make_hom(r, r, {v: np.zeros((2, 2)) for v in ("1", "2")})
    with pytest.raises(qr.PreconditionError):
        qr.decompose_with(r, zero)


def test_decompose_with_rejects_non_idempotent(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 2}, rng)
    eb = qr.end_basis(r)
    h = eb.basis[0]
    scaled = qr.hom_lincomb([3.7], [h])
    if np.linalg.norm(scaled.mat("1") @ scaled.mat("1") - scaled.mat("1")) > 1e-6:
        with pytest.raises(qr.PreconditionError):
            qr.decompose_with(r, scaled)


def test_decompose_round_trip_through_found_idempotent(rng):
    q = qr.kronecker_quiver()
    for trial in range(10):
        r1 = random_rep(q, {"1": 1, "2": 2}, rng)
        r2 = random_rep(q, {"1": 1, "2": 1}, rng)
        both = qr.direct_sum(r1, r2)
        phi = {"1": rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)),
               "2": rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))}
        hidden = qr.conjugate(both, phi)
        e = qr.find_nontrivial_idempotent(qr.end_basis(hidden), seed=trial)
        assert e is not None
        parts = qr.decompose_with(hidden, e)
        got = sorted([parts.first.dim_vector, parts.second.dim_vector])
        assert got == sorted([r1.dim_vector, r2.dim_vector])
