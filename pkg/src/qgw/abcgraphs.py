"""Parametric quantum graphs invariant under diagonal unitaries/orthogonals.

An instance is a triple of ``n x n`` matrices ``(A, B, C)`` sharing one
diagonal.  Its operator-space projector acts by

    Π(x)[i, j] = Å[i, j] x[i, j] + δ_ij (B diag(x))[i] + C̊[i, j] x[j, i],

i.e. ``B`` on the diagonal matrices plus, for each pair ``i < j``, the 2x2
block ``[[A_ij, C_ij], [C_ji, A_ji]]`` on ``span{|i><j|, |j><i|}``.  The
adjacency superoperator is the realignment of ``Π``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from .classical import ClassicalGraph, StrangeGraph, canonical_phase
from .errors import ClassificationError, InputError, ValidationError
from .numlin import DEFAULT_TOL, J, as_matrix, is_projector, max_abs
from .qgraph import QuantumGraph
from .superop import SuperOp, realign

__all__ = [
    "ABCParams",
    "ValidationReport",
    "BlockDecomposition",
    "HypParams",
    "HypEntry",
    "RandomProfile",
    "validate",
    "abc_projector",
    "abc_adjacency",
    "build",
    "decompose",
    "to_strange_graph",
    "from_strange_graph",
    "canonical",
    "CANONICAL_KINDS",
    "hyp_build",
    "hyp_enumerate",
    "classical_embedding",
    "random_abc",
    "ac_part",
    "b_part",
    "abc_disjoint_union",
    "family",
]

CANONICAL_KINDS = ("empty", "complete", "sym", "asym")


@dataclass(frozen=True, eq=False)
class ABCParams:
    """Parameters ``(A, B, C)`` with ``diag A = diag B = diag C``.

    Raises
    ------
    InputError
        On shape mismatch, non-finite entries, or a diagonal mismatch larger
        than ``tol`` (the message lists the offending indices).
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self) -> None:
        A, B, C = (as_matrix(M, name) for M, name in ((self.A, "A"), (self.B, "B"), (self.C, "C")))
        n = A.shape[0]
        for M, name in ((A, "A"), (B, "B"), (C, "C")):
            if M.shape != (n, n):
                raise InputError(f"{name} must be {n}x{n}, got {M.shape}")
        bad = [
            i
            for i in range(n)
            if abs(A[i, i] - B[i, i]) > self.tol or abs(A[i, i] - C[i, i]) > self.tol
        ]
        if bad:
            raise InputError(f"diag A = diag B = diag C violated at indices {bad}")
        for M in (A, B, C):
            M.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def A_ring(self) -> np.ndarray:
        """``A`` with its diagonal removed."""
        return self.A - np.diag(np.diag(self.A))

    @property
    def C_ring(self) -> np.ndarray:
        """``C`` with its diagonal removed."""
        return self.C - np.diag(np.diag(self.C))

    def swapped(self) -> "ABCParams":
        """The triple ``(B, A, C)``."""
        return ABCParams(self.B, self.A, self.C, self.tol)

    def allclose(self, other: "ABCParams", tol: float = 1e-9) -> bool:
        return self.n == other.n and all(
            max_abs(x - y) <= tol for x, y in ((self.A, other.A), (self.B, other.B), (self.C, other.C))
        )


@dataclass
class ValidationReport:
    """Outcome of :func:`validate`."""

    quantum_graph: bool
    undirected: bool
    loopless: bool
    reasons: list[str] = field(default_factory=list)
    bad_blocks: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "quantum_graph": self.quantum_graph,
            "undirected": self.undirected,
            "loopless": self.loopless,
            "reasons": list(self.reasons),
            "bad_blocks": [list(b) for b in self.bad_blocks],
        }


def _block(p: ABCParams, i: int, j: int) -> np.ndarray:
    return np.array([[p.A[i, j], p.C[i, j]], [p.C[j, i], p.A[j, i]]], dtype=complex)


def validate(p: ABCParams, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Decide whether ``(A, B, C)`` defines a quantum graph.

    It does iff ``B`` and every 2x2 block are orthogonal projectors.  It is
    moreover undirected iff ``Å`` is Hermitian and ``B = B^T``, and loopless
    iff ``B 1 = 0``.
    """
    n = p.n
    reasons: list[str] = []
    bad: list[tuple[int, int]] = []
    if not is_projector(p.B, tol):
        reasons.append("B is not an orthogonal projector")
    for i in range(n):
        for j in range(i + 1, n):
            if not is_projector(_block(p, i, j), tol):
                bad.append((i, j))
    if bad:
        reasons.append(f"2x2 blocks are not projectors at pairs {bad}")
    qg = not reasons
    undirected = qg
    if qg:
        Ar = p.A_ring
        if max_abs(Ar - Ar.conj().T) > tol:
            undirected = False
            reasons.append("A (off-diagonal) is not Hermitian: graph is directed")
        if max_abs(p.B - p.B.T) > tol:
            undirected = False
            reasons.append("B is not symmetric: graph is directed")
    loopless = qg and max_abs(p.B @ np.ones(n)) <= tol
    return ValidationReport(qg, undirected, loopless, reasons, bad)


def abc_projector(p: ABCParams) -> SuperOp:
    """The superoperator ``Π`` described in the module docstring."""
    n = p.n
    M = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if i != j:
                M[i * n + j, i * n + j] = p.A[i, j]
                M[j * n + i, i * n + j] = p.C[j, i]
    d = np.arange(n) * (n + 1)
    M[np.ix_(d, d)] = p.B
    return SuperOp(n, M)


def abc_adjacency(p: ABCParams) -> SuperOp:
    """Adjacency superoperator, the realignment of :func:`abc_projector`."""
    return realign(abc_projector(p))


def build(p: ABCParams, tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Quantum graph of a valid instance.

    Raises
    ------
    ValidationError
        Carrying the :class:`ValidationReport` when ``p`` is invalid.
    """
    report = validate(p, tol)
    if not report.quantum_graph:
        raise ValidationError("; ".join(report.reasons), report)
    return QuantumGraph(abc_projector(p), tol)


@dataclass
class BlockDecomposition:
    """``B`` plus the 2x2 blocks ``[[A_ij, C_ij], [C_ji, A_ji]]`` for ``i < j``."""

    B: np.ndarray
    blocks: dict[tuple[int, int], np.ndarray]

    @property
    def n(self) -> int:
        return self.B.shape[0]

    def reassemble(self) -> SuperOp:
        """Direct sum of ``B`` and the blocks, as a superoperator."""
        n = self.n
        M = np.zeros((n * n, n * n), dtype=complex)
        d = np.arange(n) * (n + 1)
        M[np.ix_(d, d)] = self.B
        for (i, j), X in self.blocks.items():
            idx = [i * n + j, j * n + i]
            M[np.ix_(idx, idx)] = X
        return SuperOp(n, M)


def decompose(p: ABCParams) -> BlockDecomposition:
    n = p.n
    blocks = {(i, j): _block(p, i, j) for i in range(n) for j in range(i + 1, n)}
    return BlockDecomposition(np.array(p.B), blocks)


def to_strange_graph(p: ABCParams, tol: float = DEFAULT_TOL) -> StrangeGraph:
    """Read off the strange graph of an undirected instance.

    Each block is either zero (no edge), the identity (classical edge) or
    ``½[[1, e^{iθ}], [e^{-iθ}, 1]]`` (strange edge of phase ``θ``).

    Raises
    ------
    ValidationError
        If the instance is not an undirected quantum graph.
    ClassificationError
        If a block has none of the three shapes.
    """
    rep = validate(p, tol)
    if not rep.undirected:
        raise ValidationError("strange graphs are defined for undirected instances only", rep)
    classical, strange = set(), {}
    I2 = np.eye(2)
    for (i, j), X in decompose(p).blocks.items():
        if max_abs(X) <= tol:
            continue
        if max_abs(X - I2) <= tol:
            classical.add((i, j))
            continue
        cij, cji = X[0, 1], X[1, 0]
        if (
            abs(X[0, 0] - 0.5) <= tol
            and abs(X[1, 1] - 0.5) <= tol
            and abs(abs(cij) - 0.5) <= tol
            and abs(cji - np.conj(cij)) <= tol
        ):
            strange[(i, j)] = canonical_phase(float(np.angle(cij)), tol)
            continue
        raise ClassificationError(f"block ({i}, {j}) is neither empty, classical nor strange", (i, j))
    return StrangeGraph(p.n, frozenset(classical), strange)


def from_strange_graph(sg: StrangeGraph, B: npt.ArrayLike | None = None, tol: float = DEFAULT_TOL) -> ABCParams:
    """Inverse of :func:`to_strange_graph` for a given ``B`` (default zero).

    Raises
    ------
    InputError
        If ``B`` is not a real symmetric projector.
    """
    n = sg.n
    if B is None:
        Bm = np.zeros((n, n), dtype=complex)
    else:
        Bm = as_matrix(B, "B")
        if Bm.shape != (n, n) or not is_projector(Bm, tol) or max_abs(Bm - Bm.T) > tol:
            raise InputError("B must be a real symmetric orthogonal projector of matching size")
    d = np.diag(np.diag(Bm))
    A = d.copy()
    C = d.copy()
    for i, j in sg.classical_edges:
        A[i, j] = A[j, i] = 1.0
    for (i, j), t in sg.strange_edges.items():
        A[i, j] = A[j, i] = 0.5
        C[i, j] = np.exp(1j * t) / 2
        C[j, i] = np.exp(-1j * t) / 2
    return ABCParams(A, Bm, C, tol)


def canonical(kind: str, n: int) -> ABCParams:
    """The four unitarily/orthogonally invariant graphs as ABC instances.

    ``empty`` and ``complete`` are the only ``U(n)``-invariant quantum graphs;
    ``sym`` and ``asym`` are the symmetric and antisymmetric ``O(n)``-invariant
    ones (operator spaces: traceless symmetric and antisymmetric matrices).
    """
    if n < 2:
        raise InputError(f"canonical graphs need n >= 2, got {n}")
    I = np.eye(n, dtype=complex)
    Jn = J(n)
    if kind == "empty":
        Z = np.zeros((n, n), dtype=complex)
        return ABCParams(Z, Z, Z)
    if kind == "complete":
        A = (n * Jn - I) / n
        B = (n * I - Jn) / n
        return ABCParams(A, B, np.diag(np.diag(A)))
    if kind == "sym":
        A = (Jn + I) / 2 - I / n
        return ABCParams(A, (n * I - Jn) / n, A.copy())
    if kind == "asym":
        return ABCParams((Jn - I) / 2, np.zeros((n, n)), (I - Jn) / 2)
    raise InputError(f"unknown canonical kind {kind!r}; expected one of {CANONICAL_KINDS}")


@dataclass(frozen=True)
class HypParams:
    """Signed-permutation invariant instance ``A = aI + a'J̊, B = aI + bJ̊, C = aI + cJ̊``."""

    n: int
    a: float
    a_prime: float
    b: float
    c: float


class HypEntry(NamedTuple):
    params: HypParams
    loopless: bool


def hyp_build(h: HypParams) -> ABCParams:
    n = h.n
    I = np.eye(n)
    Jr = np.ones((n, n)) - I
    return ABCParams(h.a * I + h.a_prime * Jr, h.a * I + h.b * Jr, h.a * I + h.c * Jr)


def hyp_enumerate(n: int) -> list[HypEntry]:
    """All 16 signed-permutation invariant quantum graphs on ``M_n``.

    ``(a, b)`` makes ``B ∈ {0, J/n, I, I - J/n}``; ``(a', c)`` makes each
    off-diagonal block ``0``, ``I``, or a rank-one projector of phase 0 or π.
    Exactly the eight with ``B ∈ {0, I - J/n}`` are loopless.
    """
    if n < 2:
        raise InputError(f"need n >= 2, got {n}")
    ab = [(0.0, 0.0), (1 / n, 1 / n), (1.0, 0.0), (1 - 1 / n, -1 / n)]
    ac = [(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (0.5, -0.5)]
    out = []
    for a, b in ab:
        for a_prime, c in ac:
            loopless = (a, b) in ((0.0, 0.0), (1 - 1 / n, -1 / n))
            out.append(HypEntry(HypParams(n, a, a_prime, b, c), loopless))
    return out


def classical_embedding(g: ClassicalGraph) -> ABCParams:
    """Diagonal embedding ``S = span{|i><j| : i ~ j}`` of a classical graph."""
    A = np.asarray(g.adjacency, dtype=float)
    if np.any(np.diag(A)):
        raise InputError("classical embedding requires a loopless graph")
    Z = np.zeros((g.n, g.n))
    return ABCParams(A, Z, Z)


@dataclass(frozen=True)
class RandomProfile:
    """Distribution for :func:`random_abc`."""

    classical_edge_prob: float = 0.3
    strange_edge_prob: float = 0.3
    b_rank: int = 0
    loopless: bool = True


def _random_real_projector(n: int, r: int, rng: np.random.Generator, avoid_ones: bool) -> np.ndarray:
    if r == 0:
        return np.zeros((n, n))
    Z = rng.standard_normal((n, r))
    if avoid_ones:
        Z -= Z.mean(axis=0, keepdims=True)
    Q, _ = np.linalg.qr(Z)
    P = Q @ Q.T
    return (P + P.T) / 2


def random_abc(n: int, seed: int | np.random.Generator = 0, profile: RandomProfile = RandomProfile()) -> ABCParams:
    """Random undirected instance: random strange graph plus random real ``B``.

    Raises
    ------
    InputError
        If ``profile.b_rank`` is infeasible: above ``n - 1`` when loopless,
        or zero when loops are requested.
    """
    # a graph with loops needs B 1 != 0, hence B != 0
    low, high = (0, n - 1) if profile.loopless else (1, n)
    if not (low <= profile.b_rank <= high):
        raise InputError(f"b_rank must lie in [{low}, {high}] for n={n}, loopless={profile.loopless}")
    pc, ps = profile.classical_edge_prob, profile.strange_edge_prob
    if pc < 0 or ps < 0 or pc + ps > 1:
        raise InputError("edge probabilities must be nonnegative with sum <= 1")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    classical, strange = set(), {}
    for i in range(n):
        for j in range(i + 1, n):
            u = rng.random()
            if u < pc:
                classical.add((i, j))
            elif u < pc + ps:
                strange[(i, j)] = rng.uniform(0, 2 * np.pi)
    B = _random_real_projector(n, profile.b_rank, rng, profile.loopless)
    return from_strange_graph(StrangeGraph(n, frozenset(classical), strange), B)


def ac_part(p: ABCParams) -> ABCParams:
    """The off-diagonal part ``X_{A,·,C}``: same blocks, ``B = 0``."""
    Z = np.zeros((p.n, p.n), dtype=complex)
    return ABCParams(p.A_ring, Z, p.C_ring)


def b_part(p: ABCParams) -> ABCParams:
    """The diagonal part ``X_{·,B}``: same ``B``, all blocks zero."""
    d = np.diag(np.diag(p.B))
    return ABCParams(d, p.B, d.copy())


def abc_disjoint_union(p1: ABCParams, p2: ABCParams) -> ABCParams:
    """Block-diagonal union; builds the disjoint union of the quantum graphs."""
    def bd(X, Y):
        k, l = X.shape[0], Y.shape[0]
        M = np.zeros((k + l, k + l), dtype=complex)
        M[:k, :k] = X
        M[k:, k:] = Y
        return M

    return ABCParams(bd(p1.A, p2.A), bd(p1.B, p2.B), bd(p1.C, p2.C))


def family(p: ABCParams, tol: float = DEFAULT_TOL) -> str:
    """Coarse family of an undirected instance.

    Returns one of ``"empty"``, ``"complete"``, ``"sym"``, ``"asym"`` (the
    canonical graphs, compared as operator spaces) or ``"A"``, ``"B"``,
    ``"AB"``, ``"AC"``, ``"ABC"`` naming which parts are nontrivial: ``A``
    when classical or strange edges exist, ``C`` when strange edges exist,
    ``B`` when ``B`` is not diagonal.
    """
    n = p.n
    if n >= 2:
        P = abc_projector(p)
        for kind in CANONICAL_KINDS:
            if P.distance(abc_projector(canonical(kind, n))) <= tol:
                return kind
    sg = to_strange_graph(p, tol)
    has_edges = bool(sg.classical_edges or sg.strange_edges)
    has_c = bool(sg.strange_edges)
    has_b = max_abs(p.B - np.diag(np.diag(p.B))) > tol
    if not has_edges:
        return "B" if has_b else "A"
    return ("A" + ("B" if has_b else "") + ("C" if has_c else "")) if has_c or has_b else "A"
