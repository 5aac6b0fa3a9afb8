"""Oriented cycles C_n: the connectivity criterion for transitivity and
the zero-vertex contraction.

On C_n every transitive representation has all dimensions 0 or 1, and among
those, transitivity is equivalent to the nonzero vertices forming a single
component under the relation generated by the nonzero arrows (indices mod n,
so chains may wrap past vertex n).
"""

from __future__ import annotations

import numpy as np

from .config import settings
from .errors import PreconditionError
from .quiver import Quiver, new_quiver
from .rep import Rep, new_rep


def cycle_quiver(n: int) -> Quiver:
    """The oriented cycle: arrows a_i : i -> i+1 for i < n and a_n : n -> 1."""
    if n < 1:
        raise ValueError(f"a cycle needs n >= 1 vertices, got {n}")
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = [(f"a{i}", str(i), str(i % n + 1)) for i in range(1, n + 1)]
    return new_quiver(vertices, arrows, name=f"C{n}")


def cycle_rep(dims, scalars) -> Rep:
    """Representation of C_n from per-vertex dims and per-arrow scalars/matrices.

    Scalar entries are promoted to 1x1 matrices where both endpoints have
    dimension 1; arrows touching a zero vertex ignore their entry.
    """
    dims = list(dims)
    n = len(dims)
    q = cycle_quiver(n)
    scalars = list(scalars)
    if len(scalars) != n:
        raise ValueError(f"need {n} arrow entries, got {len(scalars)}")
    mats = {}
    for i in range(1, n + 1):
        src_d, dst_d = dims[i - 1], dims[i % n]
        entry = scalars[i - 1]
        if src_d == 0 or dst_d == 0:
            mats[f"a{i}"] = np.zeros((dst_d, src_d), dtype=complex)
        elif np.isscalar(entry):
            if (src_d, dst_d) != (1, 1):
                raise ValueError(
                    f"arrow a{i} joins dims {src_d} -> {dst_d}; a scalar entry needs 1 -> 1"
                )
            mats[f"a{i}"] = np.array([[entry]], dtype=complex)
        else:
            mats[f"a{i}"] = np.asarray(entry, dtype=complex)
    return new_rep(q, {str(i): dims[i - 1] for i in range(1, n + 1)}, mats)


def _cycle_order(q: Quiver) -> tuple[list[str], list[str]]:
    """Vertices and arrow names of an oriented cycle in cyclic order from vertices[0]."""
    n = len(q.vertices)
    out = {v: [] for v in q.vertices}
    inc = {v: 0 for v in q.vertices}
    for a in q.arrows:
        out[a.src].append(a)
        inc[a.dst] += 1
    if len(q.arrows) != n or any(len(out[v]) != 1 for v in q.vertices) or any(
        inc[v] != 1 for v in q.vertices
    ):
        raise PreconditionError("the quiver is not an oriented cycle")
    order_v, order_a = [], []
    v = q.vertices[0]
    for _ in range(n):
        order_v.append(v)
        a = out[v][0]
        order_a.append(a.name)
        v = a.dst
    if v != q.vertices[0] or len(set(order_v)) != n:
        raise PreconditionError("the quiver is not a single oriented cycle")
    return order_v, order_a


def hf_components(r: Rep, tol: float | None = None) -> list[tuple[int, ...]]:
    """Partition of the nonzero positions of a dims<=1 cycle representation.

    Positions i, j (1-based along the cycle) are related when some chain of
    arrows with nonzero scalars joins them, indices taken mod n.  Implemented
    as connected components of the undirected graph with an edge per nonzero
    arrow.
    """
    order_v, order_a = _cycle_order(r.quiver)
    n = len(order_v)
    if n == 1:
        raise PreconditionError(
            "a one-vertex cycle is a loop; the scalar criterion does not apply (use is_transitive)"
        )
    if any(r.dims[v] > 1 for v in order_v):
        raise PreconditionError("the component relation is defined for dims 0 and 1 only")
    t = settings.tol if tol is None else tol
    alive = [i for i in range(n) if r.dims[order_v[i]] == 1]
    parent = {i: i for i in alive}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        j = (i + 1) % n
        if r.dims[order_v[i]] == 1 and r.dims[order_v[j]] == 1:
            m = r.mats[order_a[i]]
            if abs(m[0, 0]) > t:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for i in alive:
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(sorted(p + 1 for p in members)) for members in groups.values())


def cn_transitive_criterion(r: Rep, tol: float | None = None) -> bool:
    """Scalar-level transitivity test on an oriented cycle.

    False whenever some dimension exceeds 1 or all dimensions vanish; otherwise
    true exactly when the nonzero vertices form one component.
    """
    order_v, _ = _cycle_order(r.quiver)
    if len(order_v) == 1:
        raise PreconditionError(
            "a one-vertex cycle is a loop; the scalar criterion does not apply (use is_transitive)"
        )
    if any(r.dims[v] > 1 for v in order_v):
        return False
    if all(r.dims[v] == 0 for v in order_v):
        return False
    return len(hf_components(r, tol)) == 1


def reduce_zero_vertex(r: Rep, k: int) -> Rep:
    """Contract a zero vertex of C_n (n >= 3) to a representation of C_{n-1}.

    Position k (1-based along the cycle) must carry dimension 0.  The two
    arrows at k merge into one zero arrow of the smaller cycle; End is
    isomorphic before and after.
    """
    order_v, order_a = _cycle_order(r.quiver)
    n = len(order_v)
    if n < 3:
        raise PreconditionError(f"contraction needs n >= 3, got n = {n}")
    if not 1 <= k <= n:
        raise ValueError(f"position k must be in 1..{n}, got {k}")
    if r.dims[order_v[k - 1]] != 0:
        raise PreconditionError(
            f"position {k} has dimension {r.dims[order_v[k - 1]]}; contraction removes a zero vertex"
        )

    # old positions (0-based) surviving, in cycle order
    keep = [i for i in range(n) if i != k - 1]
    dims = [r.dims[order_v[i]] for i in keep]
    mats_list = []
    for j in range(len(keep)):
        i = keep[j]
        nxt = keep[(j + 1) % len(keep)]
        if (i + 1) % n == nxt:
            mats_list.append(np.asarray(r.mats[order_a[i]], dtype=complex))
        else:
            # the merged arrow through the removed vertex carries the zero map
            mats_list.append(np.zeros((dims[(j + 1) % len(keep)], dims[j]), dtype=complex))
    return cycle_rep(dims, mats_list)
