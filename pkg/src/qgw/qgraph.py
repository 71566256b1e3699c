"""Quantum graphs on M_n, represented by their operator-space projector.

A quantum graph is an operator space ``S ⊆ M_n``.  We store the orthogonal
projector ``Π`` onto ``vec(S)``; the adjacency superoperator is its
realignment ``G = Π^R`` and the normalized adjacency is ``n Π^R``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
import numpy.typing as npt

from .errors import InputError, StateError, ValidationError
from .numlin import DEFAULT_TOL, as_matrix, is_projector, is_unitary, max_abs
from .superop import SuperOp, conjugation_map, omega, realign, swap, identity, trace_map, vec

__all__ = [
    "QuantumGraph",
    "from_projector",
    "from_operator_space",
    "is_undirected",
    "is_loopless",
    "has_all_loops",
    "add_loops",
    "remove_loops",
    "edge_count",
    "disjoint_union",
    "invariance_defect",
    "check_group_invariance",
    "invariant_family",
]


class QuantumGraph:
    """Operator space ``S ⊆ M_n`` given by its projector.

    Parameters
    ----------
    proj : SuperOp or array_like
        ``n^2 x n^2`` orthogonal projector onto ``vec(S)``.
    tol : float
        Tolerance for the projector test.

    Raises
    ------
    ValidationError
        If ``proj`` is not an orthogonal projector; ``report`` carries the
        residuals ``‖Π²−Π‖`` and ``‖Π†−Π‖``.
    """

    def __init__(self, proj: SuperOp | npt.ArrayLike, tol: float = DEFAULT_TOL) -> None:
        op = proj if isinstance(proj, SuperOp) else SuperOp.from_matrix(proj)
        P = op.matrix
        if not is_projector(P, tol):
            report = {
                "idempotency_residual": max_abs(P @ P - P),
                "hermiticity_residual": max_abs(P.conj().T - P),
            }
            raise ValidationError("operator is not an orthogonal projector", report)
        self.n = op.n
        self.proj = op

    def __repr__(self) -> str:
        return f"QuantumGraph(n={self.n}, dim={self.dim})"

    @cached_property
    def basis(self) -> list[np.ndarray]:
        """Orthonormal (Hilbert-Schmidt) basis of ``S`` as ``n x n`` matrices."""
        w, U = np.linalg.eigh((self.proj.matrix + self.proj.matrix.conj().T) / 2)
        cols = U[:, w > 0.5]
        return [cols[:, c].reshape(self.n, self.n) for c in range(cols.shape[1])]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def adjacency(self) -> SuperOp:
        """Adjacency superoperator ``Π^R``."""
        return realign(self.proj)

    def normalized_adjacency(self) -> SuperOp:
        """``n Π^R``, Schur idempotent under the normalized Schur product."""
        return self.adjacency() * self.n

    def contains(self, x: npt.ArrayLike, tol: float = DEFAULT_TOL) -> bool:
        """Whether ``x`` lies in ``S`` within ``tol``."""
        v = vec(x)
        return max_abs(self.proj.matrix @ v - v) <= tol

    def distance(self, other: "QuantumGraph") -> float:
        """Largest entrywise difference between the two projectors."""
        if self.n != other.n:
            return float("inf")
        return self.proj.distance(other.proj)


def from_projector(P: SuperOp | npt.ArrayLike, tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Construct a :class:`QuantumGraph` from an operator-space projector."""
    return QuantumGraph(P, tol)


def from_operator_space(n: int, spanning: Iterable[npt.ArrayLike], tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Quantum graph whose operator space is the span of ``spanning``."""
    cols = [vec(as_matrix(x)) for x in spanning]
    if not cols:
        return QuantumGraph(np.zeros((n * n, n * n)), tol)
    M = np.stack(cols, axis=1)
    if M.shape[0] != n * n:
        raise InputError(f"spanning matrices must be {n}x{n}")
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    r = int(np.sum(s > tol * max(1.0, s[0])))
    U = U[:, :r]
    return QuantumGraph(U @ U.conj().T, tol)


def is_undirected(G: QuantumGraph, tol: float = DEFAULT_TOL) -> bool:
    """``S`` is closed under adjoints."""
    return all(G.contains(b.conj().T, tol) for b in G.basis)


def is_loopless(G: QuantumGraph, tol: float = DEFAULT_TOL) -> bool:
    """Every element of ``S`` is traceless (``Π vec(I) = 0``)."""
    return max_abs(G.proj.matrix @ omega(G.n)) <= tol


def has_all_loops(G: QuantumGraph, tol: float = DEFAULT_TOL) -> bool:
    """``I ∈ S``."""
    return G.contains(np.eye(G.n), tol)


def add_loops(G: QuantumGraph, tol: float = DEFAULT_TOL) -> QuantumGraph:
    """``S -> S ⊕ C I`` for a loopless graph."""
    if not is_loopless(G, tol):
        raise StateError("add_loops requires a loopless graph")
    return QuantumGraph(G.proj + trace_map(G.n) * (1.0 / G.n), tol)


def remove_loops(G: QuantumGraph, tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Inverse of :func:`add_loops`; requires ``I ∈ S``."""
    if not has_all_loops(G, tol):
        raise StateError("remove_loops requires a graph with all loops")
    return QuantumGraph(G.proj - trace_map(G.n) * (1.0 / G.n), tol)


def edge_count(G: QuantumGraph) -> int:
    """Number of edges ``n^2 dim S``.

    This is the counting diagram ``u^† (n Π^R) u`` with the unit normalized
    to ``√n Ω``; it evaluates to ``n^2 Tr Π``.
    """
    return G.n * G.n * G.dim


def disjoint_union(G1: QuantumGraph, G2: QuantumGraph, tol: float = DEFAULT_TOL) -> QuantumGraph:
    """Block-diagonal union on ``M_{k+l}``."""
    k, l = G1.n, G2.n
    n = k + l
    pieces = []
    for b in G1.basis:
        x = np.zeros((n, n), dtype=complex)
        x[:k, :k] = b
        pieces.append(x)
    for b in G2.basis:
        x = np.zeros((n, n), dtype=complex)
        x[k:, k:] = b
        pieces.append(x)
    P = np.zeros((n * n, n * n), dtype=complex)
    for x in pieces:
        v = vec(x)
        P += np.outer(v, v.conj())
    return QuantumGraph(P, tol)


def invariance_defect(G: QuantumGraph, u: npt.ArrayLike, tol: float = DEFAULT_TOL) -> float:
    """``‖(u⊗ū) G − G (u⊗ū)‖_max`` for the adjacency ``G``.

    Raises
    ------
    InputError
        If ``u`` is not an ``n x n`` unitary.
    """
    u = as_matrix(u, "u")
    if u.shape != (G.n, G.n) or not is_unitary(u, max(tol, 1e-10)):
        raise InputError("group element must be an n x n unitary")
    U = conjugation_map(u).matrix
    A = G.adjacency().matrix
    return max_abs(U @ A - A @ U)


def check_group_invariance(G: QuantumGraph, unitaries: Sequence[npt.ArrayLike], tol: float = DEFAULT_TOL) -> bool:
    """True iff the adjacency commutes with every ``u ⊗ ū``."""
    return all(invariance_defect(G, u, tol) <= tol for u in unitaries)


def invariant_family(group: str, n: int, alpha: float, beta: float, gamma: float = 0.0) -> SuperOp:
    """``Φ(x) = β x + α Tr(x) I + γ x^T``.

    The general ``U(n)``-invariant (``gamma = 0``) or ``O(n)``-invariant
    superoperator.
    """
    group = group.upper()
    if group not in ("U", "O"):
        raise InputError(f"group must be 'U' or 'O', got {group!r}")
    if group == "U" and gamma != 0:
        raise InputError("U(n)-invariant maps have no transpose term (gamma must be 0)")
    return identity(n) * beta + trace_map(n) * alpha + swap(n) * gamma
