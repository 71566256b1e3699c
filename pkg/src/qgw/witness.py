"""Witness types, the four defining checkers, and coordinate searches.

A *component* witness is a family of projectors ``P_s`` summing to ``I``
with ``L_{P_s} ∘ G ∘ L_{P_t} = 0`` for ``s ≠ t``; a *colouring* has
``P_s S P_s = 0``; an *independent set* is a projector ``P`` with
``P S P ⊆ C P``; a *clique* is an isometry ``V`` with
``V^† (S ⊕ C I) V = M_k``.

The coordinate searches reduce each condition to a condition on the support
pattern of the operator space, which makes them exact over coordinate
projectors; they only certify lower bounds (or upper bounds for
colourings) on the quantum parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import numpy.typing as npt

from .classical import ClassicalGraph, components, maximum_clique, optimal_colouring
from .errors import BudgetError, InconsistencyError, InputError
from .numlin import DEFAULT_TOL, as_matrix, is_isometry, is_projector, max_abs, random_isometry, rank
from .qgraph import QuantumGraph, is_loopless
from .superop import vec

__all__ = [
    "ComponentWitness",
    "ColouringWitness",
    "IndependenceWitness",
    "CliqueWitness",
    "MAX_SEARCH_N",
    "coordinate_projector",
    "check_components",
    "check_colouring",
    "check_independent_set",
    "check_clique",
    "clique_criteria",
    "support_pattern",
    "search_coordinate_components",
    "search_coordinate_colouring",
    "search_coordinate_independent",
    "random_clique_search",
]

MAX_SEARCH_N = 12


def _validate_partition(projectors: Sequence[np.ndarray], n: int, tol: float) -> None:
    if not projectors:
        raise InputError("a witness needs at least one projector")
    total = np.zeros((n, n), dtype=complex)
    for s, P in enumerate(projectors):
        if P.shape != (n, n):
            raise InputError(f"projector {s} has shape {P.shape}, expected {(n, n)}")
        if not is_projector(P, tol):
            raise InputError(f"projector {s} is not an orthogonal projector")
        if max_abs(P) <= tol:
            raise InputError(f"projector {s} is zero")
        total += P
    if max_abs(total - np.eye(n)) > tol:
        raise InputError("projectors do not sum to the identity")


@dataclass(frozen=True, eq=False)
class ComponentWitness:
    """Projectors ``P_1, ..., P_m`` with ``Σ P_s = I``."""

    projectors: tuple

    def __init__(self, projectors: Sequence[npt.ArrayLike]) -> None:
        object.__setattr__(self, "projectors", tuple(as_matrix(P, "projector") for P in projectors))

    @property
    def parts(self) -> int:
        return len(self.projectors)

    def validate(self, n: int, tol: float = DEFAULT_TOL) -> None:
        _validate_partition(self.projectors, n, tol)


class ColouringWitness(ComponentWitness):
    """Projectors ``P_1, ..., P_k`` with ``Σ P_s = I`` used as colour classes."""

    @property
    def colours(self) -> int:
        return len(self.projectors)


@dataclass(frozen=True, eq=False)
class IndependenceWitness:
    """A single projector ``P``; the independent set has size ``rank P``."""

    P: np.ndarray

    def __init__(self, P: npt.ArrayLike) -> None:
        object.__setattr__(self, "P", as_matrix(P, "P"))

    @property
    def k(self) -> int:
        return rank(self.P)

    def validate(self, n: int, tol: float = DEFAULT_TOL) -> None:
        if self.P.shape != (n, n):
            raise InputError(f"P has shape {self.P.shape}, expected {(n, n)}")
        if not is_projector(self.P, tol):
            raise InputError("P is not an orthogonal projector")
        if max_abs(self.P) <= tol:
            raise InputError("P is zero")


@dataclass(frozen=True, eq=False)
class CliqueWitness:
    """An isometry ``V: C^k -> C^n``."""

    V: np.ndarray

    def __init__(self, V: npt.ArrayLike) -> None:
        V = as_matrix(V, "V")
        object.__setattr__(self, "V", V)

    @property
    def k(self) -> int:
        return self.V.shape[1]

    def validate(self, n: int, tol: float = DEFAULT_TOL) -> None:
        if self.V.shape[0] != n:
            raise InputError(f"V has {self.V.shape[0]} rows, expected {n}")
        if self.k < 1:
            raise InputError("V must have at least one column")
        if not is_isometry(self.V, tol):
            raise InputError("V is not an isometry")


def coordinate_projector(subset: Sequence[int], n: int) -> np.ndarray:
    """``Σ_{i ∈ subset} |i><i|``."""
    P = np.zeros((n, n), dtype=complex)
    for i in subset:
        if not 0 <= i < n:
            raise InputError(f"vertex {i} out of range for n={n}")
        P[i, i] = 1.0
    return P


def check_components(G: QuantumGraph, w: ComponentWitness, tol: float = DEFAULT_TOL) -> bool:
    """``L_{P_s} ∘ G ∘ L_{P_t} = 0`` for every ``s ≠ t`` on all of ``M_n``."""
    w.validate(G.n, tol)
    T = G.adjacency().tensor
    Ps = w.projectors
    # (L_P G)[(i,j),(b,l)] = Σ_a P_ia T[a,j,b,l]; then compose with L_Q on the right.
    left = [np.einsum("ia,ajbl->ijbl", P, T) for P in Ps]
    for s, LP in enumerate(left):
        for t, Q in enumerate(Ps):
            if s != t and max_abs(np.einsum("ijbl,bk->ijkl", LP, Q)) > tol:
                return False
    return True


def check_colouring(G: QuantumGraph, w: ColouringWitness, tol: float = DEFAULT_TOL) -> bool:
    """``P_s b P_s = 0`` for every basis element ``b`` and class ``s``."""
    w.validate(G.n, tol)
    return all(max_abs(P @ b @ P) <= tol for P in w.projectors for b in G.basis)


def check_independent_set(G: QuantumGraph, w: IndependenceWitness, tol: float = DEFAULT_TOL) -> bool:
    """``P b P ∈ C P`` for every basis element ``b``."""
    w.validate(G.n, tol)
    P = w.P
    norm2 = float(np.real(np.vdot(P, P)))
    for b in G.basis:
        X = P @ b @ P
        lam = np.vdot(P, X) / norm2
        if max_abs(X - lam * P) > tol:
            return False
    return True


def clique_criteria(G: QuantumGraph, w: CliqueWitness, tol: float = DEFAULT_TOL) -> tuple[bool, bool]:
    """Evaluate both clique criteria separately.

    Returns
    -------
    (bool, bool)
        ``dim span({V^† b V} ∪ {I_k}) = k^2`` and, for a loopless graph,
        ``rank(y -> Π vec(V y V^†))`` restricted to traceless ``y`` equal to
        ``k^2 - 1``.  With loops, the second test uses the projector onto
        ``S + C I`` over all of ``M_k`` and compares with ``k^2``.
    """
    w.validate(G.n, tol)
    V = w.V
    n, k = V.shape
    Vh = V.conj().T
    rows = [vec(Vh @ b @ V) for b in G.basis] + [vec(np.eye(k))]
    first = rank(np.stack(rows, axis=1), tol) == k * k

    units = []
    for i in range(k):
        for j in range(k):
            if i != j:
                y = np.zeros((k, k), dtype=complex)
                y[i, j] = 1.0
                units.append(y)
    for i in range(k - 1):
        y = np.zeros((k, k), dtype=complex)
        y[i, i], y[k - 1, k - 1] = 1.0, -1.0
        units.append(y)
    if is_loopless(G, tol):
        Q, target = G.proj.matrix, k * k - 1
    else:
        w_ = vec(np.eye(n))
        r = w_ - G.proj.matrix @ w_
        Q = G.proj.matrix.copy()
        if np.linalg.norm(r) > tol:
            r = r / np.linalg.norm(r)
            Q = Q + np.outer(r, r.conj())
        units.append(np.eye(k, dtype=complex))
        target = k * k
    if units:
        cols = np.stack([Q @ vec(V @ y @ Vh) for y in units], axis=1)
        second = rank(cols, tol) == target
    else:
        second = target == 0
    return first, second


def check_clique(G: QuantumGraph, w: CliqueWitness, tol: float = DEFAULT_TOL) -> bool:
    """``V^† (S ⊕ C I) V = M_k``, decided by two independent criteria.

    Raises
    ------
    InconsistencyError
        If the two criteria disagree.
    """
    first, second = clique_criteria(G, w, tol)
    if first != second:
        raise InconsistencyError(f"clique criteria disagree (span test {first}, injectivity test {second})")
    return first


def support_pattern(G: QuantumGraph, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Boolean ``n x n`` matrix: ``[i, j]`` iff some element of ``S`` has a nonzero ``(i, j)`` entry."""
    n = G.n
    norms = np.linalg.norm(G.proj.matrix, axis=0).reshape(n, n)
    return norms > tol


def _budget(G: QuantumGraph) -> None:
    if G.n > MAX_SEARCH_N:
        raise BudgetError(f"coordinate searches are limited to n <= {MAX_SEARCH_N}, got n={G.n}")


def _off_diagonal_graph(S: np.ndarray) -> ClassicalGraph:
    H = (S | S.T) & ~np.eye(S.shape[0], dtype=bool)
    return ClassicalGraph(S.shape[0], H)


def search_coordinate_components(
    G: QuantumGraph, max_parts: int | None = None, tol: float = DEFAULT_TOL
) -> ComponentWitness:
    """Coordinate component witness with the most parts (at most ``max_parts``).

    A coordinate partition passes iff no element of ``S`` has support
    joining two different parts, so the finest passing partition is the
    connected components of the support pattern; any coarsening passes too.
    """
    _budget(G)
    parts = components(_off_diagonal_graph(support_pattern(G, tol)))
    if max_parts is not None:
        if max_parts < 1:
            raise InputError("max_parts must be positive")
        if len(parts) > max_parts:
            parts = parts[: max_parts - 1] + [sorted(v for p in parts[max_parts - 1 :] for v in p)]
    w = ComponentWitness([coordinate_projector(p, G.n) for p in parts])
    if not check_components(G, w, tol):
        raise InconsistencyError("coordinate component witness from the support pattern was rejected")
    return w


def search_coordinate_colouring(
    G: QuantumGraph, k: int | None = None, tol: float = DEFAULT_TOL
) -> ColouringWitness | None:
    """Coordinate colouring with the fewest colours, if it uses at most ``k``.

    A coordinate partition colours ``S`` iff no part contains both ends of a
    supported entry; a supported diagonal entry rules out every coordinate
    colouring.
    """
    _budget(G)
    S = support_pattern(G, tol)
    if np.any(np.diag(S)):
        return None
    classes = optimal_colouring(_off_diagonal_graph(S))
    if k is not None and len(classes) > k:
        return None
    w = ColouringWitness([coordinate_projector(c, G.n) for c in classes])
    if not check_colouring(G, w, tol):
        raise InconsistencyError("coordinate colouring from the support pattern was rejected")
    return w


def search_coordinate_independent(G: QuantumGraph, tol: float = DEFAULT_TOL) -> IndependenceWitness:
    """Largest coordinate independent set.

    ``T`` passes iff for all ``i ≠ j`` in ``T`` the entry ``(i, j)`` is
    unsupported and every element of ``S`` has equal ``(i, i)`` and
    ``(j, j)`` entries; this is pairwise, so the answer is a maximum clique
    of the compatibility graph.
    """
    _budget(G)
    n = G.n
    S = support_pattern(G, tol)
    Pm = G.proj.matrix
    compat = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if S[i, j] or S[j, i]:
                continue
            d = np.zeros(n * n, dtype=complex)
            d[i * n + i], d[j * n + j] = 1.0, -1.0
            if max_abs(Pm @ d) <= tol:
                compat[i, j] = compat[j, i] = True
    T = maximum_clique(ClassicalGraph(n, compat))
    w = IndependenceWitness(coordinate_projector(T, n))
    if not check_independent_set(G, w, tol):
        raise InconsistencyError("coordinate independent set from the support pattern was rejected")
    return w


def random_clique_search(
    G: QuantumGraph, k: int, trials: int = 100, seed: int = 0, tol: float = DEFAULT_TOL
) -> CliqueWitness | None:
    """First passing isometry among the coordinate isometry and random ones.

    The first candidate is ``V = [e_1, ..., e_k]``; the remaining
    ``trials - 1`` are Haar-random and reproducible from ``seed``.
    """
    if not 1 <= k <= G.n:
        raise InputError(f"need 1 <= k <= n, got k={k}, n={G.n}")
    rng = np.random.default_rng(seed)
    for t in range(max(trials, 1)):
        V = np.eye(G.n, k, dtype=complex) if t == 0 else random_isometry(G.n, k, rng)
        w = CliqueWitness(V)
        if check_clique(G, w, tol):
            return w
    return None
