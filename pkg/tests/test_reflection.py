import numpy as np
import pytest

import quivrep as qr
from quivrep.reflection import (
    is_co_closed_at_source,
    is_closed_at_sink,
    orientation_sequence_an,
)
from conftest import random_rep


def test_sink_kernel_of_ones_row_is_frozen_vector():
    # arrival map [1 1] at the sink; its kernel is the normalized difference.
    # The phase rule makes the largest-magnitude coordinate real positive; the
    # LAPACK output for this instance puts the one-ulp-larger magnitude second,
    # so the frozen vector is (-, +).
    q = qr.new_quiver(["1", "2", "3"], [("a", "1", "3"), ("b", "2", "3")])
    r = qr.new_rep(q, {"1": 1, "2": 1, "3": 1}, {"a": [[1.0]], "b": [[1.0]]})
    res = qr.reflect_sink(r, "3")
    assert res.rep.dim("3") == 1
    expected = np.array([[-0.7071067811865475], [0.7071067811865476]])
    assert np.array_equal(res.kernel_basis, expected)
    assert np.array_equal(res.rep.mat("a~"), [[-0.7071067811865475]])
    assert np.array_equal(res.rep.mat("b~"), [[0.7071067811865476]])
    # unit norm and actual kernel membership, independent of sign conventions
    assert abs(np.linalg.norm(res.kernel_basis) - 1.0) < 1e-15
    assert abs(res.kernel_basis[0, 0] + res.kernel_basis[1, 0]) < 1e-15


def test_reflect_sink_rejects_non_sink():
    q = qr.kronecker_quiver()
    r = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[1.0]], "b": [[1.0]]})
    with pytest.raises(qr.PreconditionError):
        qr.reflect_sink(r, "1")
    with pytest.raises(qr.PreconditionError):
        qr.reflect_source(r, "2")


def test_reflected_dimension_at_sink(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 3, "2": 2}, rng)
    res = qr.reflect_sink(r, "2")
    # kernel of a full-rank 2x6 stacked map has dimension 4
    assert res.rep.dim("2") == 4
    assert res.rep.dim("1") == 3


def test_dual_is_an_exact_involution(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 3}, rng)
    back = qr.dual(qr.dual(r))
    assert back.quiver.vertices == r.quiver.vertices
    for a in ("a", "b"):
        assert np.array_equal(back.mat(a), r.mat(a))


def test_source_reflection_equals_dualized_sink_reflection(rng):
    q = qr.kronecker_quiver()
    for _ in range(20):
        d1 = int(rng.integers(1, 4))
        d2 = int(rng.integers(1, 4))
        r = random_rep(q, {"1": d1, "2": d2}, rng)
        direct = qr.reflect_source(r, "1").rep
        via = qr.dual(qr.reflect_sink(qr.dual(r), "1").rep)
        assert direct.dim_vector == via.dim_vector
        for a in direct.quiver.arrows:
            assert np.array_equal(direct.mat(a.name), via.mat(a.name))


def test_fullness_predicates(rng):
    q = qr.kronecker_quiver()
    full = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[1.0]], "b": [[0.0]]})
    assert qr.is_full_at_sink(full, "2")
    not_full = qr.new_rep(q, {"1": 1, "2": 1}, {"a": [[0.0]], "b": [[0.0]]})
    assert not qr.is_full_at_sink(not_full, "2")
    assert qr.is_co_full_at_source(full, "1")
    with pytest.raises(qr.PreconditionError):
        qr.is_full_at_sink(full, "1")
    assert is_closed_at_sink(full, "2")
    assert is_co_closed_at_source(full, "1")


def test_end_isomorphism_report_on_full_instances(rng):
    q = qr.kronecker_quiver()
    count = 0
    for _ in range(30):
        d1 = int(rng.integers(1, 4))
        d2 = int(rng.integers(1, 2 * d1 + 1))
        r = random_rep(q, {"1": d1, "2": d2}, rng)
        if not qr.is_full_at_sink(r, "2"):
            continue
        report = qr.verify_end_isomorphism(r, "2", "plus")
        assert report.hypothesis_ok
        assert report.end_dim == report.end_dim_reflected
        assert report.max_multiplicativity_residual <= 1e-8
        assert report.max_membership_residual <= 1e-8
        assert report.ok
        count += 1
    assert count >= 20


def test_end_isomorphism_minus_direction(rng):
    q = qr.kronecker_quiver()
    for _ in range(10):
        d1 = int(rng.integers(1, 4))
        d2 = int(rng.integers((d1 + 1) // 2, 4))
        r = random_rep(q, {"1": d1, "2": d2}, rng)
        if not qr.is_co_full_at_source(r, "1"):
            continue
        report = qr.verify_end_isomorphism(r, "1", "minus")
        assert report.ok


def test_transport_of_identity_is_identity(rng):
    q = qr.kronecker_quiver()
    r = random_rep(q, {"1": 2, "2": 2}, rng)
    res = qr.reflect_sink(r, "2")
    t = qr.transport_hom(res, res, qr.identity_hom(r))
    for v in ("1", "2"):
        assert np.allclose(t.mat(v), np.eye(res.rep.dim(v)), atol=1e-12)


def test_plus_minus_round_trip_on_indecomposable(rng):
    q = qr.kronecker_quiver()
    # preprojective-shaped dims, generically indecomposable and co-full at 1
    r = random_rep(q, {"1": 2, "2": 3}, rng)
    assert qr.is_indecomposable(r, seed=0).indecomposable
    minus = qr.reflect_source(r, "1")
    back = qr.reflect_sink(minus.rep, "1")
    iso = qr.find_isomorphism(r, back.rep, seed=0)
    assert iso is not None and qr.is_invertible_hom(iso)


def test_minus_of_simple_at_source_vanishes():
    q = qr.kronecker_quiver()
    simple = qr.new_rep(q, {"1": 1, "2": 0})
    res = qr.reflect_source(simple, "1")
    assert res.rep.is_zero


# ------------------------------------------------------ orientation walks


def _replay(n, seq, target):
    """Independent simulation: True iff seq realizes target by source flips."""
    state = [True] * (n - 1)  # True = rightward arrow i: i -> i+1
    for v in seq:
        if v == n:
            return False
        left_ok = v == 1 or not state[v - 2]
        right_ok = state[v - 1]
        if not (left_ok and right_ok):
            return False  # not a source at its step
        if v > 1:
            state[v - 2] = True
        state[v - 1] = False
    return state == list(target)


def test_orientation_sequence_identity_is_empty():
    assert orientation_sequence_an(4, ">>>") == []


def test_orientation_sequence_single_flip():
    assert orientation_sequence_an(2, "<") == [1]


def test_orientation_sequences_exhaustive():
    for n in range(2, 6):
        for bits in range(2 ** (n - 1)):
            target = [(bits >> i) & 1 == 1 for i in range(n - 1)]
            seq = orientation_sequence_an(n, target)
            assert all(v != n for v in seq)
            assert _replay(n, seq, target), f"replay failed for n={n} target={target}"
