"""Exact combinatorics on classical and strange graphs.

Vertices are ``0..n-1``.  Strange-graph parameters are those of the
underlying classical graph; phases are carried as annotations only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import BudgetError, InputError

__all__ = [
    "MAX_EXACT_N",
    "ClassicalGraph",
    "StrangeGraph",
    "components",
    "underlying",
    "chromatic_number",
    "optimal_colouring",
    "independence_number",
    "maximum_independent_set",
    "clique_number",
    "maximum_clique",
    "sg_disjoint_union",
    "strange_complete",
    "canonical_phase",
]

MAX_EXACT_N = 20
TWO_PI = 2 * np.pi


@dataclass(frozen=True, eq=False)
class ClassicalGraph:
    """Simple undirected loopless graph on ``n`` vertices."""

    n: int
    adjacency: np.ndarray

    def __post_init__(self) -> None:
        A = np.array(self.adjacency, dtype=bool)
        if A.shape != (self.n, self.n):
            raise InputError(f"adjacency must be {self.n}x{self.n}, got {A.shape}")
        if np.any(A != A.T):
            raise InputError("adjacency must be symmetric")
        if np.any(np.diag(A)):
            raise InputError("classical graphs must be loopless")
        A.setflags(write=False)
        object.__setattr__(self, "adjacency", A)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "ClassicalGraph":
        A = np.zeros((n, n), dtype=bool)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise InputError(f"loop at vertex {i}")
            A[i, j] = A[j, i] = True
        return cls(n, A)

    @classmethod
    def empty(cls, n: int) -> "ClassicalGraph":
        return cls(n, np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> "ClassicalGraph":
        return cls(n, ~np.eye(n, dtype=bool))

    @classmethod
    def path(cls, n: int) -> "ClassicalGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "ClassicalGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete_bipartite(cls, m: int, k: int) -> "ClassicalGraph":
        return cls.from_edges(m + k, [(i, m + j) for i in range(m) for j in range(k)])

    @classmethod
    def random(cls, n: int, p: float, seed: int | np.random.Generator = 0) -> "ClassicalGraph":
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        upper = np.triu(rng.random((n, n)) < p, 1)
        return cls(n, upper | upper.T)

    @property
    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def complement(self) -> "ClassicalGraph":
        return ClassicalGraph(self.n, ~self.adjacency & ~np.eye(self.n, dtype=bool))

    def neighbours(self, v: int) -> list[int]:
        return np.nonzero(self.adjacency[v])[0].tolist()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ClassicalGraph) and self.n == other.n and bool(
            np.array_equal(self.adjacency, other.adjacency)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency.tobytes()))


def canonical_phase(theta: float, tol: float = 1e-8) -> float:
    """Representative of ``theta`` in ``[0, 2π)``; values within ``tol`` of 2π map to 0."""
    t = float(np.mod(theta, TWO_PI))
    return 0.0 if t >= TWO_PI - tol else t


def _pair(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True, eq=False)
class StrangeGraph:
    """Graph with classical edges and strange edges carrying a phase.

    Parameters
    ----------
    n : int
    classical_edges : iterable of pairs
    strange_edges : mapping from pairs to phases
        Pairs are normalized to ``(i, j)`` with ``i < j``; phases to ``[0, 2π)``.
    """

    n: int
    classical_edges: frozenset = field(default_factory=frozenset)
    strange_edges: Mapping[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ce = frozenset(_pair(int(i), int(j)) for i, j in self.classical_edges)
        se = {_pair(int(i), int(j)): canonical_phase(t) for (i, j), t in dict(self.strange_edges).items()}
        for i, j in list(ce) + list(se):
            if i == j:
                raise InputError(f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InputError(f"edge ({i}, {j}) out of range for n={self.n}")
        both = ce & set(se)
        if both:
            raise InputError(f"edges both classical and strange: {sorted(both)}")
        object.__setattr__(self, "classical_edges", ce)
        object.__setattr__(self, "strange_edges", dict(sorted(se.items())))

    def isclose(self, other: "StrangeGraph", tol: float = 1e-8) -> bool:
        """Same edges and phases within ``tol`` (modulo 2π)."""
        if self.n != other.n or self.classical_edges != other.classical_edges:
            return False
        if set(self.strange_edges) != set(other.strange_edges):
            return False
        for e, t in self.strange_edges.items():
            d = abs(np.angle(np.exp(1j * (t - other.strange_edges[e]))))
            if d > tol:
                return False
        return True

    def has_classical_edge(self) -> bool:
        return bool(self.classical_edges)


def underlying(sg: StrangeGraph) -> ClassicalGraph:
    """Drop phases: every classical or strange edge becomes an edge."""
    return ClassicalGraph.from_edges(sg.n, list(sg.classical_edges) + list(sg.strange_edges))


def components(g: ClassicalGraph | StrangeGraph) -> list[list[int]]:
    """Connected components by union-find, each sorted, ordered by least vertex."""
    if isinstance(g, StrangeGraph):
        edges = list(g.classical_edges) + list(g.strange_edges)
    else:
        edges = g.edges
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return [groups[r] for r in sorted(groups)]


def _as_classical(g: ClassicalGraph | StrangeGraph) -> ClassicalGraph:
    return underlying(g) if isinstance(g, StrangeGraph) else g


def _budget(g: ClassicalGraph) -> None:
    if g.n > MAX_EXACT_N:
        raise BudgetError(f"exact solvers are limited to n <= {MAX_EXACT_N}, got n={g.n}")


def _degeneracy_order(A: np.ndarray) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    n = A.shape[0]
    alive = np.ones(n, dtype=bool)
    deg = A.sum(axis=1).astype(int)
    order = []
    for _ in range(n):
        cand = np.where(alive, deg, n + 1)
        v = int(np.argmin(cand))
        order.append(v)
        alive[v] = False
        deg -= A[v].astype(int)
    return order


def _mis_masks(nbr: list[int], mask: int) -> int:
    """Maximum independent set inside ``mask`` as a bitmask (branch and bound)."""
    if mask == 0:
        return 0
    # vertices of degree <= 1 inside mask can always be taken
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        d = bin(nbr[v] & mask).count("1")
        if d <= 1:
            return (1 << v) | _mis_masks(nbr, mask & ~(nbr[v] | (1 << v)))
    # branch on the max-degree vertex (lowest index on ties)
    best_v, best_d = -1, -1
    m = mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        d = bin(nbr[v] & mask).count("1")
        if d > best_d:
            best_v, best_d = v, d
    v = best_v
    take = (1 << v) | _mis_masks(nbr, mask & ~(nbr[v] | (1 << v)))
    skip = _mis_masks(nbr, mask & ~(1 << v))
    return take if bin(take).count("1") >= bin(skip).count("1") else skip


def _neighbour_masks(A: np.ndarray) -> list[int]:
    return [sum(1 << j for j in np.nonzero(A[i])[0].tolist()) for i in range(A.shape[0])]


def maximum_independent_set(g: ClassicalGraph | StrangeGraph) -> list[int]:
    """A maximum independent set (sorted vertex list)."""
    g = _as_classical(g)
    _budget(g)
    mask = _mis_masks(_neighbour_masks(g.adjacency), (1 << g.n) - 1)
    return [v for v in range(g.n) if mask >> v & 1]


def independence_number(g: ClassicalGraph | StrangeGraph) -> int:
    return len(maximum_independent_set(g))


def maximum_clique(g: ClassicalGraph | StrangeGraph) -> list[int]:
    """A maximum clique, via independent sets of the complement."""
    return maximum_independent_set(_as_classical(g).complement())


def clique_number(g: ClassicalGraph | StrangeGraph) -> int:
    return len(maximum_clique(g))


def _try_colour(A: np.ndarray, order: list[int], k: int) -> list[int] | None:
    n = len(order)
    colour = [-1] * A.shape[0]
    nbrs = [np.nonzero(A[v])[0].tolist() for v in range(A.shape[0])]

    def rec(idx: int, used: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        taken = {colour[u] for u in nbrs[v] if colour[u] >= 0}
        # symmetry breaking: allow at most one fresh colour
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            colour[v] = c
            if rec(idx + 1, max(used, c + 1)):
                return True
            colour[v] = -1
        return False

    return colour if rec(0, 0) else None


def optimal_colouring(g: ClassicalGraph | StrangeGraph) -> list[list[int]]:
    """Colour classes of a minimum proper colouring.

    Iterative deepening from the clique number, vertices visited in reverse
    degeneracy order.
    """
    g = _as_classical(g)
    _budget(g)
    if g.n == 0:
        return []
    order = _degeneracy_order(g.adjacency)[::-1]
    for k in range(max(1, clique_number(g)), g.n + 1):
        col = _try_colour(g.adjacency, order, k)
        if col is not None:
            classes: dict[int, list[int]] = {}
            for v, c in enumerate(col):
                classes.setdefault(c, []).append(v)
            return sorted(classes.values())
    raise AssertionError("unreachable: n colours always suffice")


def chromatic_number(g: ClassicalGraph | StrangeGraph) -> int:
    return len(optimal_colouring(g))


def sg_disjoint_union(sg1: StrangeGraph, sg2: StrangeGraph) -> StrangeGraph:
    """Union with the vertices of ``sg2`` shifted by ``sg1.n``."""
    s = sg1.n
    ce = set(sg1.classical_edges) | {(i + s, j + s) for i, j in sg2.classical_edges}
    se = dict(sg1.strange_edges)
    se.update({(i + s, j + s): t for (i, j), t in sg2.strange_edges.items()})
    return StrangeGraph(sg1.n + sg2.n, frozenset(ce), se)


def strange_complete(n: int, theta: float) -> StrangeGraph:
    """Complete graph whose every edge is strange with phase ``theta``."""
    return StrangeGraph(n, frozenset(), {(i, j): theta for i in range(n) for j in range(i + 1, n)})
