"""Operator pairs on truncated sequence spaces and their subspace systems.

Covers: named weight sequences with log-domain evaluation, the
shift-plus-rank-one / diagonal pair on l2(N), the bilateral weighted pair on a
finite window of Z, the density criterion for the rank-one construction, the
four-subspace system of a pair, endomorphisms of subspace systems, the
doubling map into a four-subspace system, strong irreducibility, and the
factorial-weight four-subspace family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .config import settings
from .errors import PreconditionError
from .hom import end_basis, hom_basis, is_indecomposable
from .quiver import jordan_quiver, kronecker_quiver, new_quiver
from .rep import Rep, new_rep

# ---------------------------------------------------------------------------
# weight sequences


@dataclass(frozen=True)
class SequenceSpec:
    """A named weight sequence with exact log-magnitude evaluation.

    Families:
      reciprocal          1/n                      (n >= 1)
      one-minus-pow       1 - base**(-n)           (n >= 1, base > 1)
      exp-neg-pow         exp(-lam**n) when n >= 1 and n has the given
                          parity, else 1           (lam > 1)
      hrr                 1 for n <= 0, exp((-1)^n n!) for n >= 1
      const               the constant c
      list                explicit 1-based prefix, then the declared tail
    """

    family: str
    base: float = 2.0
    lam: float = 2.0
    parity: str = "even"
    const: complex = 1.0
    values: tuple = ()
    tail: "SequenceSpec | None" = None

    def __post_init__(self):
        if self.family not in ("reciprocal", "one-minus-pow", "exp-neg-pow", "hrr", "const", "list"):
            raise ValueError(f"unknown sequence family {self.family!r}")
        if self.family == "one-minus-pow" and not self.base > 1:
            raise ValueError(f"one-minus-pow needs base > 1, got {self.base}")
        if self.family == "exp-neg-pow":
            if not self.lam > 1:
                raise ValueError(f"exp-neg-pow needs lam > 1, got {self.lam}")
            if self.parity not in ("even", "odd"):
                raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")

    # -- evaluation

    def _masked(self, n: int) -> bool:
        want = 0 if self.parity == "even" else 1
        return n >= 1 and n % 2 == want

    def value(self, n: int) -> complex:
        if self.family == "reciprocal":
            if n < 1:
                raise ValueError(f"reciprocal is defined for n >= 1, got n = {n}")
            return 1.0 / n
        if self.family == "one-minus-pow":
            if n < 1:
                raise ValueError(f"one-minus-pow is defined for n >= 1, got n = {n}")
            return 1.0 - self.base ** (-n)
        if self.family == "exp-neg-pow":
            return math.exp(-(self.lam**n)) if self._masked(n) else 1.0
        if self.family == "hrr":
            if n <= 0:
                return 1.0
            return math.exp(self.log_abs(n))
        if self.family == "const":
            return self.const
        # list
        if 1 <= n <= len(self.values):
            return complex(self.values[n - 1])
        if self.tail is not None:
            return self.tail.value(n)
        raise ValueError(f"explicit list of length {len(self.values)} has no entry at n = {n} and no tail")

    def log_abs(self, n: int) -> float:
        """log |value(n)|; -inf marks an exact zero.  Never overflows for hrr-sized n."""
        if self.family == "reciprocal":
            if n < 1:
                raise ValueError(f"reciprocal is defined for n >= 1, got n = {n}")
            return -math.log(n)
        if self.family == "one-minus-pow":
            if n < 1:
                raise ValueError(f"one-minus-pow is defined for n >= 1, got n = {n}")
            return math.log1p(-(self.base ** (-n)))
        if self.family == "exp-neg-pow":
            return -(self.lam**n) if self._masked(n) else 0.0
        if self.family == "hrr":
            if n <= 0:
                return 0.0
            try:
                f = float(math.factorial(n))
            except OverflowError:
                f = math.inf
            return f if n % 2 == 0 else -f
        if self.family == "const":
            a = abs(self.const)
            return math.log(a) if a > 0 else -math.inf
        if 1 <= n <= len(self.values):
            a = abs(complex(self.values[n - 1]))
            return math.log(a) if a > 0 else -math.inf
        if self.tail is not None:
            return self.tail.log_abs(n)
        raise ValueError(f"explicit list of length {len(self.values)} has no entry at n = {n} and no tail")

    # -- structural queries used by the density analysis

    def has_zero(self) -> bool:
        if self.family == "const":
            return self.const == 0
        if self.family == "list":
            if any(complex(v) == 0 for v in self.values):
                return True
            return self.tail.has_zero() if self.tail is not None else False
        return False

    def literal(self) -> str:
        """The CLI literal that parses back to this spec."""
        if self.family == "reciprocal":
            return "seq:reciprocal"
        if self.family == "one-minus-pow":
            return f"seq:one-minus-pow:{fmt_number(self.base)}"
        if self.family == "exp-neg-pow":
            return f"seq:exp-neg-pow:{fmt_number(self.lam)}:{self.parity}"
        if self.family == "hrr":
            return "seq:hrr"
        if self.family == "const":
            return f"seq:const:{fmt_number(self.const)}"
        body = ",".join(fmt_number(v) for v in self.values)
        lit = f"seq:list:[{body}]"
        if self.tail is not None:
            lit += ":" + self.tail.literal()[len("seq:") :]
        return lit


def fmt_number(z) -> str:
    """Shortest-roundtrip decimal for a real or complex number."""
    z = complex(z)
    if z.imag == 0:
        re = z.real
        return repr(int(re)) if re == int(re) and abs(re) < 1e15 else repr(re)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}j"


def parse_sequence(literal) -> SequenceSpec:
    """Parse 'seq:<family>[:params]' literals (see SequenceSpec families)."""
    if isinstance(literal, SequenceSpec):
        return literal
    text = literal.strip()
    if not text.startswith("seq:"):
        raise ValueError(f"sequence literal must start with 'seq:', got {literal!r}")
    body = text[len("seq:") :]
    if body == "reciprocal":
        return SequenceSpec("reciprocal")
    if body == "hrr":
        return SequenceSpec("hrr")
    parts = body.split(":")
    if parts[0] == "one-minus-pow" and len(parts) <= 2:
        base = float(parts[1]) if len(parts) == 2 else 2.0
        return SequenceSpec("one-minus-pow", base=base)
    if parts[0] == "exp-neg-pow":
        if len(parts) != 3:
            raise ValueError(f"exp-neg-pow literal needs 'seq:exp-neg-pow:<lam>:<even|odd>', got {literal!r}")
        return SequenceSpec("exp-neg-pow", lam=float(parts[1]), parity=parts[2])
    if body.startswith("const:"):
        return SequenceSpec("const", const=complex(body[len("const:") :]))
    if body.startswith("list:"):
        rest = body[len("list:") :]
        if not rest.startswith("["):
            raise ValueError(f"list literal needs 'seq:list:[...]', got {literal!r}")
        close = rest.find("]")
        if close < 0:
            raise ValueError(f"unterminated list in {literal!r}")
        inner = rest[1:close]
        values = tuple(complex(x.strip()) for x in inner.split(",") if x.strip() != "")
        after = rest[close + 1 :]
        tail = None
        if after.startswith(":"):
            tail = parse_sequence("seq:" + after[1:])
        elif after:
            raise ValueError(f"unexpected trailing text {after!r} in {literal!r}")
        return SequenceSpec("list", values=values, tail=tail)
    raise ValueError(f"unknown sequence literal {literal!r}")


def parity_weight_pair(lam: float = 3.0) -> tuple[SequenceSpec, SequenceSpec]:
    """Diagonal/shift weights exp(-lam**n) on even / odd n >= 1, else 1."""
    return (
        SequenceSpec("exp-neg-pow", lam=lam, parity="even"),
        SequenceSpec("exp-neg-pow", lam=lam, parity="odd"),
    )


# ---------------------------------------------------------------------------
# fixture operators


def unilateral_shift(n: int) -> np.ndarray:
    """S e_i = e_{i+1}, last basis vector mapped out of the window (dropped)."""
    return np.eye(n, k=-1, dtype=complex)


def bilateral_shift(n: int) -> np.ndarray:
    """Truncated two-sided shift: same matrix, window indexing, no wrap."""
    return np.eye(n, k=-1, dtype=complex)


def diag_of(seq, n: int) -> np.ndarray:
    s = parse_sequence(seq)
    return np.diag([complex(s.value(i)) for i in range(1, n + 1)]).astype(complex)


def jordan_block(n: int, lam: complex = 0.0) -> np.ndarray:
    return lam * np.eye(n, dtype=complex) + np.eye(n, k=-1, dtype=complex)


def rank_one(x, y) -> np.ndarray:
    """theta_{x,y}: z -> (z|y) x, i.e. the matrix x y*."""
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    return np.outer(x, y.conj())


def make_fixture(kind: str, **params) -> np.ndarray:
    builders = {
        "unilateral_shift": lambda: unilateral_shift(int(params["n"])),
        "bilateral_shift": lambda: bilateral_shift(int(params["n"])),
        "diag": lambda: diag_of(params["seq"], int(params["n"])),
        "jordan": lambda: jordan_block(int(params["n"]), complex(params.get("lam", 0.0))),
        "rank_one": lambda: rank_one(params["x"], params["y"]),
    }
    if kind not in builders:
        raise ValueError(f"unknown fixture kind {kind!r}; expected one of {sorted(builders)}")
    return builders[kind]()


# ---------------------------------------------------------------------------
# operator pairs


@dataclass
class OperatorPair:
    a: np.ndarray
    b: np.ndarray
    tag: str = ""
    params: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.a.shape[0]


def kron_pair_shift_rank_one(lam, w, n: int) -> OperatorPair:
    """A = (shift)(diag of lam) + rank-one row of w, B = shift, on C^n.

    Hypotheses: the lam values are pairwise distinct on 1..n and every w value
    is nonzero.  A x = (sum_k x_k w_k, lam_1 x_1, ..., lam_{n-1} x_{n-1}).
    """
    lam = parse_sequence(lam)
    w = parse_sequence(w)
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    lam_vals = np.array([complex(lam.value(i)) for i in range(1, n + 1)])
    w_vals = np.array([complex(w.value(i)) for i in range(1, n + 1)])
    if len(set(lam_vals.tolist())) != n:
        raise PreconditionError(
            "the diagonal weights must be pairwise distinct on the window; a repeated value breaks the construction"
        )
    if np.any(w_vals == 0):
        raise PreconditionError("every w_n must be nonzero; a zero row weight breaks the construction")
    a = unilateral_shift(n) @ np.diag(lam_vals) + np.outer(np.eye(n, dtype=complex)[0], w_vals)
    b = unilateral_shift(n)
    return OperatorPair(
        a, b, tag="shift-rank-one", params={"n": n, "lam": lam.literal(), "w": w.literal()}
    )


def kron_pair_bilateral(a_seq, b_seq, m: int) -> OperatorPair:
    """Diagonal A and weighted-shift B over the window -m..m of Z (no wrap).

    A e_k = a(k) e_k and B e_k = b(k) e_{k+1}; the image of the top window
    vector leaves the window and is dropped.  Any weight that evaluates to
    exact zero in the window (for instance by underflow of exp(-lam**n))
    is an error.
    """
    a_seq = parse_sequence(a_seq)
    b_seq = parse_sequence(b_seq)
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    offsets = list(range(-m, m + 1))
    size = len(offsets)
    a_vals = [complex(a_seq.value(k)) for k in offsets]
    b_vals = [complex(b_seq.value(k)) for k in offsets]
    for name, vals in (("a", a_vals), ("b", b_vals)):
        for k, v in zip(offsets, vals):
            if v == 0:
                raise PreconditionError(
                    f"{name}({k}) is exactly zero in the window (underflow?); the weights must be nonzero"
                )
    a = np.diag(a_vals).astype(complex)
    b = np.zeros((size, size), dtype=complex)
    for i in range(size - 1):
        b[i + 1, i] = b_vals[i]
    return OperatorPair(
        a,
        b,
        tag="bilateral",
        params={"m": m, "a": a_seq.literal(), "b": b_seq.literal()},
    )


def log_mk(a_seq, b_seq, m: int, n: int, k: int) -> float:
    """log of the weight-ratio product M_k(m, n) = prod_{j<k} w_{m+j} / w_{n+j},
    where w = b/a, evaluated entirely in the log domain."""
    a_seq = parse_sequence(a_seq)
    b_seq = parse_sequence(b_seq)
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    total = 0.0
    for j in range(k):
        for i in (m + j, n + j):
            la, lb = a_seq.log_abs(i), b_seq.log_abs(i)
            if math.isinf(la) or math.isinf(lb):
                raise PreconditionError(f"zero weight at index {i}; the ratio products need nonzero weights")
        total += (b_seq.log_abs(m + j) - a_seq.log_abs(m + j)) - (
            b_seq.log_abs(n + j) - a_seq.log_abs(n + j)
        )
    return total


# ---------------------------------------------------------------------------
# density of the rank-one orbit construction


@dataclass(frozen=True)
class DensityVerdict:
    dense: bool
    ratio_l2: bool | None
    reason: str
    heuristic: bool = False


def _classify(spec: SequenceSpec):
    """('poly', p) when |value| ~ n**p eventually; ('parity-exp', lam, parity); or None."""
    if spec.family == "reciprocal":
        return ("poly", -1)
    if spec.family == "one-minus-pow":
        return ("poly", 0)
    if spec.family == "const":
        return ("poly", 0) if spec.const != 0 else None
    if spec.family == "exp-neg-pow":
        return ("parity-exp", spec.lam, spec.parity)
    if spec.family == "list":
        if spec.tail is None:
            raise PreconditionError(
                "an explicit list without a declared tail has undecidable tail behavior; declare a tail family"
            )
        return _classify(spec.tail)
    return None  # hrr and anything else: no closed-form class


def _heuristic_l2(lam: SequenceSpec, w: SequenceSpec, terms: int = 2000) -> tuple[bool, str]:
    logs = []
    for i in range(1, terms + 1):
        logs.append(2.0 * (w.log_abs(i) - lam.log_abs(i)))
    peak = max(logs)
    if peak > math.log(1e12):
        return False, f"ratio term exceeds 1e12 within {terms} indices"
    total = sum(math.exp(x) for x in logs)
    tail = sum(math.exp(x) for x in logs[terms // 2 :])
    if tail < 1e-9 * max(total, 1.0):
        return True, f"partial sums stabilize within {terms} indices"
    return False, f"partial sums still growing after {terms} indices"


def density_criterion(lam, w) -> DensityVerdict:
    """Decide density of the orbit construction from the weight sequences.

    Dense exactly when every lam_k is nonzero and (w_k / lam_k) is not
    square-summable.  Named families are decided in closed form; otherwise a
    flagged partial-sum heuristic answers.
    """
    lam = parse_sequence(lam)
    w = parse_sequence(w)
    if w.has_zero():
        raise PreconditionError("w_n = 0 violates the construction hypothesis (all w_n must be nonzero)")
    if lam.has_zero():
        return DensityVerdict(False, None, "some lambda_k = 0, so the orbit misses a coordinate")

    cw, cl = _classify(w), _classify(lam)
    if cw is not None and cl is not None:
        if cw[0] == "poly" and cl[0] == "poly":
            delta = cw[1] - cl[1]
            l2 = 2 * delta < -1
            reason = f"|w/lambda| ~ n^{delta}: " + ("square-summable" if l2 else "not square-summable")
        elif cw[0] == "parity-exp" and cl[0] == "poly":
            l2 = 2 * cl[1] > 1
            reason = (
                "off-parity ratio ~ n^%d is %s"
                % (-cl[1], "square-summable" if l2 else "not square-summable")
            )
        elif cw[0] == "poly" and cl[0] == "parity-exp":
            l2 = False
            reason = "on-parity ratio grows like exp(+lam**n); not square-summable"
        else:  # both parity-exp
            l2 = False
            reason = "parity weight ratios keep unit or growing magnitude on some parity class; not square-summable"
        return DensityVerdict(not l2, l2, reason)

    l2, why = _heuristic_l2(lam, w)
    return DensityVerdict(not l2, l2, why, heuristic=True)


# ---------------------------------------------------------------------------
# subspace systems


@dataclass
class SubspaceSystem:
    """Finitely many subspaces of C^ambient, each given by an orthonormal injection."""

    ambient: int
    injections: list[np.ndarray]
    labels: tuple[str, ...]
    tag: str = ""

    def __post_init__(self):
        if len(self.labels) != len(self.injections):
            raise ValueError("one label per subspace")
        for lbl, j in zip(self.labels, self.injections):
            if j.shape[0] != self.ambient:
                raise ValueError(f"{lbl}: injection has {j.shape[0]} rows, ambient is {self.ambient}")
            if j.shape[1]:
                defect = np.linalg.norm(j.conj().T @ j - np.eye(j.shape[1]))
                if defect > 1e-8:
                    raise ValueError(f"{lbl}: columns are not orthonormal (defect {defect:.2e})")

    @property
    def sub_dims(self) -> tuple[int, ...]:
        return tuple(j.shape[1] for j in self.injections)


def four_subspace_from_pair(p: OperatorPair) -> SubspaceSystem:
    """E1 = H+0, E2 = 0+H, E3 = column space of [A; B], E4 = diagonal, in C^{2n}."""
    n = p.n
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    e1 = np.vstack([eye, zero])
    e2 = np.vstack([zero, eye])
    e3 = linalg.orth(np.vstack([p.a, p.b]))
    e4 = np.vstack([eye, eye]) / np.sqrt(2.0)
    return SubspaceSystem(2 * n, [e1, e2, e3, e4], ("E1", "E2", "E3", "E4"), tag=f"four({p.tag})")


@dataclass
class SystemEndBasis:
    """Orthonormal basis (flattened row-major) of {T : T E_i <= E_i for all i}."""

    system: SubspaceSystem
    basis: list[np.ndarray]
    tol_used: float

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def max_residual(self) -> float:
        worst = 0.0
        for t in self.basis:
            for j in self.system.injections:
                p = j @ j.conj().T
                worst = max(worst, float(np.linalg.norm((np.eye(self.system.ambient) - p) @ t @ p)))
        return worst


def subspace_system_end(s: SubspaceSystem) -> SystemEndBasis:
    """Solve (1 - P_i) T P_i = 0 for all subspaces as one stacked nullspace."""
    d = s.ambient
    if d == 0:
        return SystemEndBasis(s, [], 0.0)
    blocks = []
    eye = np.eye(d, dtype=complex)
    for j in s.injections:
        p = j @ j.conj().T
        blocks.append(np.kron(eye - p, p.T))
    system = np.vstack(blocks) if blocks else np.zeros((0, d * d), dtype=complex)
    if system.shape[0] == 0:
        vectors = np.eye(d * d, dtype=complex)
        tol_used = 0.0
    else:
        # Every active block kron(1 - P, P^T) has spectral norm exactly 1, so
        # the honest scale of this system is max(sigma_1, 1): a stack made of
        # nothing but projector roundoff must null out completely.
        _, sv, vh = np.linalg.svd(linalg.real_if_exact(system))
        tol_used = max(float(sv[0]), 1.0) * max(system.shape) * settings.svd_factor
        rank = int(np.sum(sv > tol_used))
        vectors = linalg.phase_normalize(np.asarray(vh, dtype=complex)[rank:].conj().T)
    basis = [vectors[:, j].reshape(d, d) for j in range(vectors.shape[1])]
    return SystemEndBasis(s, basis, tol_used)


def subspace_system_rep(s: SubspaceSystem) -> Rep:
    """The inclusion-quiver representation of a subspace system.

    Vertices 1..n carry the subspaces, vertex n+1 the ambient space, and arrow
    a_k : k -> n+1 carries the injection.  T -> T_{n+1} identifies End of this
    representation with End of the system.
    """
    n = len(s.injections)
    center = str(n + 1)
    q = new_quiver(
        [str(i) for i in range(1, n + 1)] + [center],
        [(f"a{i}", str(i), center) for i in range(1, n + 1)],
        name=f"R{n}",
    )
    dims = {str(i): s.injections[i - 1].shape[1] for i in range(1, n + 1)}
    dims[center] = s.ambient
    mats = {f"a{i}": s.injections[i - 1] for i in range(1, n + 1)}
    return new_rep(q, dims, mats)


# ---------------------------------------------------------------------------
# the doubling map into the four-subspace system


@dataclass
class PhiMapReport:
    end_dim: int
    system_end_dim: int
    ker_dim: int
    expected_ker_dim: int
    injective: bool
    surjective: bool
    membership_residual: float


def phi_map(pair: OperatorPair) -> PhiMapReport:
    """Send an intertwiner (S, T) of the pair to T + T on the four-subspace system.

    The kernel consists of the pairs (S, 0), so its dimension is
    n * dim(ker A ∩ ker B); the map always lands in End of the system and is
    onto it, which the report checks by dimension count.
    """
    n = pair.n
    q = kronecker_quiver()
    rep = new_rep(q, {"1": n, "2": n}, {"a": pair.a, "b": pair.b})
    eb = end_basis(rep)
    system = four_subspace_from_pair(pair)
    sys_end = subspace_system_end(system)

    images = []
    memb = 0.0
    eye2n = np.eye(2 * n, dtype=complex)
    projs = [j @ j.conj().T for j in system.injections]
    for h in eb.basis:
        t = h.mats["2"]
        m = np.zeros((2 * n, 2 * n), dtype=complex)
        m[:n, :n] = t
        m[n:, n:] = t
        images.append(m)
        for p in projs:
            memb = max(memb, float(np.linalg.norm((eye2n - p) @ m @ p)))

    if images:
        flat = np.array([im.reshape(-1) for im in images])
        rank = linalg.matrix_rank(flat)
    else:
        rank = 0
    ker_dim = eb.dim - rank
    joint_kernel = linalg.nullspace(np.vstack([pair.a, pair.b])).shape[1]
    return PhiMapReport(
        end_dim=eb.dim,
        system_end_dim=sys_end.dim,
        ker_dim=ker_dim,
        expected_ker_dim=n * joint_kernel,
        injective=ker_dim == 0,
        surjective=sys_end.dim == eb.dim - ker_dim,
        membership_residual=memb,
    )


# ---------------------------------------------------------------------------
# strong irreducibility


@dataclass
class StrongIrreducibilityVerdict:
    strongly_irreducible: bool
    commutant_dim: int
    witness: np.ndarray | None = None
    trials_used: int = 0


def commutant_basis(a) -> list[np.ndarray]:
    """Orthonormal (flattened) basis of {T : TA = AT}."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    system = np.kron(a, np.eye(n)) - np.kron(np.eye(n), a.T)
    vectors = linalg.nullspace(system)
    return [vectors[:, j].reshape(n, n) for j in range(vectors.shape[1])]


def is_strongly_irreducible(a, seed: int = 0, trials: int | None = None) -> StrongIrreducibilityVerdict:
    """No nontrivial idempotent commutes with `a`.

    Delegates to the indecomposability of the one-loop representation with
    matrix `a`, whose endomorphisms are exactly the commutant.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise PreconditionError("strong irreducibility is about operators on a nonzero space")
    r = new_rep(jordan_quiver(), {"1": a.shape[0]}, {"a": a})
    verdict = is_indecomposable(r, seed=seed, trials=trials)
    witness = verdict.witness.mats["1"] if verdict.witness is not None else None
    return StrongIrreducibilityVerdict(
        verdict.kind == "indecomposable", verdict.end_dim, witness, verdict.trials_used
    )


# ---------------------------------------------------------------------------
# factorial-weight four-subspace family


def hrr_log_weight(n: int) -> float:
    """log w_n for the factorial-alternating weights: 0 for n <= 0, (-1)^n n! for n >= 1."""
    return SequenceSpec("hrr").log_abs(n)


def hrr_system(n: int) -> SubspaceSystem:
    """Four-subspace system of the truncated factorial-weight shift on C^{2n}.

    The window covers offsets centered at 0; the graph subspace is assembled
    from per-column normalized direction vectors computed in the log domain,
    so no weight is ever materialized outside double range.
    """
    if n < 2:
        raise ValueError(f"need a window of at least 2 points, got {n}")
    lo = -((n - 1) // 2)
    idx = [lo + i for i in range(n)]
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    e1 = np.vstack([eye, zero])
    e2 = np.vstack([zero, eye])
    e4 = np.vstack([eye, eye]) / np.sqrt(2.0)

    e3 = np.zeros((2 * n, n), dtype=complex)
    for i in range(n - 1):
        logw = hrr_log_weight(idx[i])
        if logw <= 0:
            t = math.exp(logw)
            c = 1.0 / math.sqrt(1.0 + t * t)
            s = t * c
        else:
            u = math.exp(-logw)
            s = 1.0 / math.sqrt(1.0 + u * u)
            c = u * s
        e3[i, i] = c
        e3[n + i + 1, i] = s
    e3[n - 1, n - 1] = 1.0  # top window vector: the shift image leaves the window
    return SubspaceSystem(2 * n, [e1, e2, e3, e4], ("E1", "E2", "E3", "E4"), tag=f"hrr(window {idx[0]}..{idx[-1]})")
