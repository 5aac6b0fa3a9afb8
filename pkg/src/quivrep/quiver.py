"""Finite quiver data model: vertex classification, orientation surgery, shape recognition.

A quiver is a finite directed multigraph.  Vertex and arrow identifiers are
strings (numeric labels are mapped to their decimal strings), loops and
parallel arrows are allowed, and declaration order is significant: every
operation that stacks blocks per arrow does so in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError

REVERSAL_MARK = "~"


def _label(x) -> str:
    return x if isinstance(x, str) else str(x)


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    name: str = field(default="Q", compare=False)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"no arrow named {name!r}")

    def arrows_into(self, v) -> list[Arrow]:
        v = _label(v)
        return [a for a in self.arrows if a.dst == v]

    def arrows_out_of(self, v) -> list[Arrow]:
        v = _label(v)
        return [a for a in self.arrows if a.src == v]

    def has_vertex(self, v) -> bool:
        return _label(v) in self.vertices


def new_quiver(vertices, arrows, name: str = "Q") -> Quiver:
    """Build a quiver from vertex labels and (name, src, dst) triples."""
    vs = tuple(_label(v) for v in vertices)
    if len(vs) == 0:
        raise ValueError("a quiver needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise ValueError(f"duplicate vertex labels in {vs}")
    built = []
    seen = set()
    for spec in arrows:
        if isinstance(spec, Arrow):
            a = spec
        else:
            nm, src, dst = spec
            a = Arrow(_label(nm), _label(src), _label(dst))
        if a.name in seen:
            raise ValueError(f"duplicate arrow name {a.name!r}")
        seen.add(a.name)
        if a.src not in vs or a.dst not in vs:
            raise ValueError(f"arrow {a.name!r}: endpoint {a.src!r} -> {a.dst!r} not among vertices")
        built.append(a)
    return Quiver(vs, tuple(built), name=name)


def vertex_kinds(q: Quiver) -> dict[str, str]:
    """Classify every vertex as 'sink', 'source', 'internal' or 'isolated'.

    A sink emits no arrow, a source receives none; a loop makes its vertex
    internal (it both emits and receives).
    """
    out = {v: 0 for v in q.vertices}
    inc = {v: 0 for v in q.vertices}
    for a in q.arrows:
        out[a.src] += 1
        inc[a.dst] += 1
    kinds = {}
    for v in q.vertices:
        if out[v] == 0 and inc[v] == 0:
            kinds[v] = "isolated"
        elif out[v] == 0:
            kinds[v] = "sink"
        elif inc[v] == 0:
            kinds[v] = "source"
        else:
            kinds[v] = "internal"
    return kinds


def is_sink(q: Quiver, v) -> bool:
    return len(q.arrows_out_of(v)) == 0


def is_source(q: Quiver, v) -> bool:
    return len(q.arrows_into(v)) == 0


def toggle_mark(name: str) -> str:
    """Arrow id for a reversed arrow; reversing twice restores the original id."""
    if name.endswith(REVERSAL_MARK):
        return name[: -len(REVERSAL_MARK)]
    return name + REVERSAL_MARK


def reverse_at(q: Quiver, v, mode: str) -> Quiver:
    """Reverse all arrows at `v`: mode 'sink' flips incoming, 'source' outgoing.

    The vertex must actually be of the requested kind (a loop vertex is
    neither, so it is always rejected).
    """
    v = _label(v)
    if not q.has_vertex(v):
        raise ValueError(f"no vertex {v!r}")
    if mode == "sink":
        if not is_sink(q, v):
            raise PreconditionError(
                f"vertex {v!r} is not a sink; arrows leave it, so reversing the incoming arrows is undefined"
            )
        flipped = lambda a: a.dst == v
    elif mode == "source":
        if not is_source(q, v):
            raise PreconditionError(
                f"vertex {v!r} is not a source; arrows enter it, so reversing the outgoing arrows is undefined"
            )
        flipped = lambda a: a.src == v
    else:
        raise ValueError(f"mode must be 'sink' or 'source', got {mode!r}")
    arrows = [
        Arrow(toggle_mark(a.name), a.dst, a.src) if flipped(a) else a
        for a in q.arrows
    ]
    return Quiver(q.vertices, tuple(arrows), name=q.name)


def opposite(q: Quiver) -> Quiver:
    """Reverse every arrow; applying twice restores the quiver, ids included."""
    arrows = tuple(Arrow(toggle_mark(a.name), a.dst, a.src) for a in q.arrows)
    return Quiver(q.vertices, arrows, name=q.name)


def is_oriented_cycle(q: Quiver) -> bool:
    """True when the quiver is a single directed cycle 1 -> 2 -> ... -> n -> 1 (any labels)."""
    n = len(q.vertices)
    if len(q.arrows) != n:
        return False
    out = {v: [] for v in q.vertices}
    inc = {v: 0 for v in q.vertices}
    for a in q.arrows:
        out[a.src].append(a)
        inc[a.dst] += 1
    if any(len(out[v]) != 1 for v in q.vertices) or any(inc[v] != 1 for v in q.vertices):
        return False
    # one cycle, not several: following unique successors must visit everything
    seen = set()
    v = q.vertices[0]
    for _ in range(n):
        if v in seen:
            return False
        seen.add(v)
        v = out[v][0].dst
    return v == q.vertices[0] and len(seen) == n


@dataclass(frozen=True)
class GraphFamily:
    family: str  # "A", "D", "E6", "E7", "E8", "A~", "D~", "E6~", "E7~", "E8~", "other"
    n: int | None = None
    oriented_cycle: bool = False

    @property
    def label(self) -> str:
        if self.n is None:
            return self.family
        return f"{self.family}{self.n}"


def _connected(q: Quiver) -> bool:
    if not q.vertices:
        return False
    adj = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.src].add(a.dst)
        adj[a.dst].add(a.src)
    seen = {q.vertices[0]}
    stack = [q.vertices[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(q.vertices)


def _arms(q: Quiver, center: str, degree: dict[str, int]) -> list[tuple[int, str]]:
    """Walk each path leaving `center` until a vertex of degree != 2; returns (length, end)."""
    adj: dict[str, list[str]] = {v: [] for v in q.vertices}
    for a in q.arrows:
        adj[a.src].append(a.dst)
        adj[a.dst].append(a.src)
    arms = []
    for start in adj[center]:
        length = 1
        prev, cur = center, start
        while degree[cur] == 2:
            nxt = [w for w in adj[cur] if w != prev]
            prev, cur = cur, nxt[0]
            length += 1
        arms.append((length, cur))
    return arms


def graph_family(q: Quiver) -> GraphFamily:
    """Recognize the underlying undirected multigraph.

    Returns the (extended) Dynkin family when the shape matches:
    A_n paths, D_n / E6 / E7 / E8 trees, the cycles A~_{n-1} (with an
    oriented_cycle flag), D~_n (n >= 4) and E6~/E7~/E8~.  Everything else
    is tagged "other".
    """
    if not _connected(q):
        return GraphFamily("other")
    nv = len(q.vertices)
    ne = len(q.arrows)
    loops = [a for a in q.arrows if a.src == a.dst]
    degree = {v: 0 for v in q.vertices}
    for a in q.arrows:
        degree[a.src] += 1
        degree[a.dst] += 1

    if loops:
        if nv == 1 and ne == 1:
            return GraphFamily("A~", 0, oriented_cycle=True)
        return GraphFamily("other")

    if ne == nv:  # exactly one cycle
        if all(degree[v] == 2 for v in q.vertices):
            return GraphFamily("A~", nv - 1, oriented_cycle=is_oriented_cycle(q))
        return GraphFamily("other")

    if ne != nv - 1:
        return GraphFamily("other")

    # trees from here on
    branch = [v for v in q.vertices if degree[v] >= 3]
    if not branch:
        return GraphFamily("A", nv)
    if len(branch) == 1:
        c = branch[0]
        arms = _arms(q, c, degree)
        if any(end != c and degree[end] != 1 for _, end in arms):
            return GraphFamily("other")
        lengths = sorted(length for length, _ in arms)
        if degree[c] == 4:
            return GraphFamily("D~", 4) if lengths == [1, 1, 1, 1] else GraphFamily("other")
        if degree[c] != 3:
            return GraphFamily("other")
        if lengths[:2] == [1, 1]:
            return GraphFamily("D", nv)
        if lengths == [1, 2, 2]:
            return GraphFamily("E6")
        if lengths == [1, 2, 3]:
            return GraphFamily("E7")
        if lengths == [1, 2, 4]:
            return GraphFamily("E8")
        if lengths == [2, 2, 2]:
            return GraphFamily("E6~")
        if lengths == [1, 3, 3]:
            return GraphFamily("E7~")
        if lengths == [1, 2, 5]:
            return GraphFamily("E8~")
        return GraphFamily("other")
    if len(branch) == 2:
        a, b = branch
        if degree[a] == degree[b] == 3:
            ok = True
            for c, other in ((a, b), (b, a)):
                arms = _arms(q, c, degree)
                leaf_arms = sorted(l for l, end in arms if end != other)
                link_arms = [l for l, end in arms if end == other]
                if leaf_arms != [1, 1] or len(link_arms) != 1:
                    ok = False
            if ok:
                return GraphFamily("D~", nv - 1)
        return GraphFamily("other")
    return GraphFamily("other")


# ---------------------------------------------------------------------------
# common shapes


def jordan_quiver() -> Quiver:
    """One vertex with a loop."""
    return new_quiver(["1"], [("a", "1", "1")], name="jordan")


def kronecker_quiver() -> Quiver:
    """Two vertices, two parallel arrows 1 -> 2."""
    return new_quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")], name="kronecker")


def an_quiver(n: int, orientation=None) -> Quiver:
    """A_n path on vertices 1..n; edge i joins i and i+1.

    `orientation` is a string over '><' (or an iterable of bools, True for
    rightward i -> i+1) of length n-1; default all rightward.
    """
    if n < 1:
        raise ValueError(f"A_n needs n >= 1, got {n}")
    dirs = parse_orientation(n, orientation)
    arrows = []
    for i, right in enumerate(dirs, start=1):
        if right:
            arrows.append((f"e{i}", str(i), str(i + 1)))
        else:
            arrows.append((f"e{i}", str(i + 1), str(i)))
    return new_quiver([str(i) for i in range(1, n + 1)], arrows, name=f"A{n}")


def parse_orientation(n: int, orientation) -> list[bool]:
    """Normalize an A_n orientation to a list of n-1 bools (True = rightward)."""
    if orientation is None:
        return [True] * (n - 1)
    if isinstance(orientation, str):
        bad = set(orientation) - {">", "<"}
        if bad:
            raise ValueError(f"orientation characters must be '>' or '<', got {sorted(bad)}")
        dirs = [c == ">" for c in orientation]
    else:
        dirs = [bool(x) for x in orientation]
    if len(dirs) != n - 1:
        raise ValueError(f"orientation needs {n - 1} entries for A_{n}, got {len(dirs)}")
    return dirs
