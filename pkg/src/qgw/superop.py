"""Superoperators on M_n stored as n^2 x n^2 complex matrices.

Index convention: row ``(i, j)`` and column ``(k, l)`` map to flat indices
``i*n + j`` and ``k*n + l``, i.e. ``vec`` is row-major (``x.reshape(-1)``)
and ``vec(|k><l|) = |k> ⊗ |l>``.  A superoperator ``T`` acts by

    apply(T, x)[i, j] = sum_{k,l} T[(i,j),(k,l)] x[k, l].

Under this convention ``realign(identity) = (x -> Tr(x) I)`` and the swap
``x -> x^T`` is realignment invariant.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import InputError
from .numlin import as_matrix

__all__ = [
    "SuperOp",
    "vec",
    "unvec",
    "identity",
    "swap",
    "trace_map",
    "omega",
    "left_mult",
    "right_mult",
    "conjugation_map",
    "realign",
    "apply",
    "schur_product",
    "conjugate",
    "transpose_map",
    "FrobeniusData",
    "classical_frobenius",
    "matrix_frobenius",
]


@dataclass(frozen=True, eq=False)
class SuperOp:
    """Linear map M_n -> M_n.

    Parameters
    ----------
    n : int
        Side length of the matrices acted on.
    matrix : ndarray
        ``n^2 x n^2`` complex matrix in the row-major ``vec`` convention.
        Stored as a read-only copy.
    """

    n: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        n = int(self.n)
        if n < 1:
            raise InputError(f"n must be positive, got {n}")
        m = as_matrix(self.matrix, "superoperator")
        if m.shape != (n * n, n * n):
            raise InputError(f"superoperator for n={n} must be {n*n}x{n*n}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, M: npt.ArrayLike) -> "SuperOp":
        """Wrap an ``n^2 x n^2`` matrix, inferring ``n``."""
        M = as_matrix(M, "superoperator")
        n = int(round(np.sqrt(M.shape[0])))
        if n * n != M.shape[0]:
            raise InputError(f"side length {M.shape[0]} is not a perfect square")
        return cls(n, M)

    @classmethod
    def from_tensor(cls, T: npt.ArrayLike) -> "SuperOp":
        """Wrap a rank-4 tensor ``T[i, j, k, l]``."""
        T = np.asarray(T, dtype=complex)
        if T.ndim != 4 or len(set(T.shape)) != 1:
            raise InputError(f"expected an (n,n,n,n) tensor, got shape {T.shape}")
        n = T.shape[0]
        return cls(n, T.reshape(n * n, n * n))

    @classmethod
    def from_function(cls, n: int, f) -> "SuperOp":
        """Tabulate a linear function ``f: M_n -> M_n`` on matrix units."""
        M = np.zeros((n * n, n * n), dtype=complex)
        for k in range(n):
            for l in range(n):
                e = np.zeros((n, n), dtype=complex)
                e[k, l] = 1.0
                M[:, k * n + l] = np.asarray(f(e), dtype=complex).reshape(-1)
        return cls(n, M)

    @property
    def tensor(self) -> np.ndarray:
        """View as ``T[i, j, k, l]``."""
        n = self.n
        return self.matrix.reshape(n, n, n, n)

    def __call__(self, x: npt.ArrayLike) -> np.ndarray:
        return apply(self, x)

    def __add__(self, other: "SuperOp") -> "SuperOp":
        _same_n(self, other)
        return SuperOp(self.n, self.matrix + other.matrix)

    def __sub__(self, other: "SuperOp") -> "SuperOp":
        _same_n(self, other)
        return SuperOp(self.n, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "SuperOp":
        return SuperOp(self.n, self.matrix * complex(scalar))

    __rmul__ = __mul__

    def __matmul__(self, other: "SuperOp") -> "SuperOp":
        """Composition ``self ∘ other``."""
        _same_n(self, other)
        return SuperOp(self.n, self.matrix @ other.matrix)

    def allclose(self, other: "SuperOp", tol: float = 1e-9) -> bool:
        """Entrywise comparison within ``tol``."""
        return self.n == other.n and bool(np.max(np.abs(self.matrix - other.matrix)) <= tol)

    def distance(self, other: "SuperOp") -> float:
        """Largest entrywise difference."""
        _same_n(self, other)
        return float(np.max(np.abs(self.matrix - other.matrix)))


def _same_n(a: SuperOp, b: SuperOp) -> None:
    if a.n != b.n:
        raise InputError(f"dimension mismatch: n={a.n} vs n={b.n}")


def vec(x: npt.ArrayLike) -> np.ndarray:
    """Row-major vectorization of a square matrix."""
    return np.asarray(x, dtype=complex).reshape(-1)


def unvec(v: npt.ArrayLike) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    n = int(round(np.sqrt(v.size)))
    if n * n != v.size:
        raise InputError(f"length {v.size} is not a perfect square")
    return v.reshape(n, n)


def identity(n: int) -> SuperOp:
    return SuperOp(n, np.eye(n * n))


def swap(n: int) -> SuperOp:
    """The transposition map ``x -> x^T``."""
    return SuperOp.from_tensor(np.einsum("il,jk->ijkl", np.eye(n), np.eye(n)))


def omega(n: int) -> np.ndarray:
    """``vec(I_n)``, the unnormalized maximally entangled vector."""
    return vec(np.eye(n))


def trace_map(n: int) -> SuperOp:
    """``x -> Tr(x) I``, whose matrix is ``Ω Ω^†``."""
    w = omega(n)
    return SuperOp(n, np.outer(w, w.conj()))


def left_mult(p: npt.ArrayLike) -> SuperOp:
    """``L_p: x -> p x``."""
    p = as_matrix(p, "p")
    n = p.shape[0]
    return SuperOp(n, np.kron(p, np.eye(n)))


def right_mult(p: npt.ArrayLike) -> SuperOp:
    """``R_p: x -> x p``."""
    p = as_matrix(p, "p")
    n = p.shape[0]
    return SuperOp(n, np.kron(np.eye(n), p.T))


def conjugation_map(u: npt.ArrayLike) -> SuperOp:
    """``x -> u x u^†``, i.e. the matrix ``u ⊗ conj(u)``."""
    u = as_matrix(u, "u")
    return SuperOp(u.shape[0], np.kron(u, u.conj()))


def realign(T: SuperOp) -> SuperOp:
    """Realignment ``T^R[(i,j),(k,l)] = T[(l,j),(k,i)]``.

    An involution and an isometry for the entrywise 2-norm.
    """
    return SuperOp.from_tensor(T.tensor.transpose(3, 1, 2, 0))


def apply(T: SuperOp, x: npt.ArrayLike) -> np.ndarray:
    """Apply ``T`` to an ``n x n`` matrix."""
    x = as_matrix(x, "x")
    if x.shape != (T.n, T.n):
        raise InputError(f"expected a {T.n}x{T.n} matrix, got {x.shape}")
    return (T.matrix @ x.reshape(-1)).reshape(T.n, T.n)


def schur_product(F: SuperOp, G: SuperOp) -> SuperOp:
    """Normalized Schur product on M_n.

    ``(F ⋆ G)[(i,j),(k,l)] = (1/n) sum_{p,q} F[(i,p),(k,q)] G[(p,j),(q,l)]``.
    With this normalization ``n Π^R`` is Schur idempotent for every
    operator-space projector ``Π``.
    """
    _same_n(F, G)
    T = np.einsum("ipkq,pjql->ijkl", F.tensor, G.tensor) / F.n
    return SuperOp.from_tensor(T)


def conjugate(T: SuperOp) -> SuperOp:
    """Entrywise complex conjugate."""
    return SuperOp(T.n, T.matrix.conj())


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    """Dense structure tensors of a special symmetric dagger-Frobenius monoid.

    Attributes
    ----------
    dim : int
        Dimension of the underlying space (``n`` for C^n, ``n^2`` for M_n).
    mult : ndarray
        ``dim x dim^2`` multiplication ``m``.
    unit : ndarray
        Length-``dim`` unit vector ``u``.
    """

    n: int
    dim: int
    mult: np.ndarray
    unit: np.ndarray

    @property
    def comult(self) -> np.ndarray:
        return self.mult.conj().T

    @property
    def counit(self) -> np.ndarray:
        return self.unit.conj()

    @property
    def cup(self) -> np.ndarray:
        """``m^† u``: the state ``dim^2`` vector bending a wire."""
        return self.comult @ self.unit

    @property
    def cap(self) -> np.ndarray:
        """``u^† m``: the effect dual to :attr:`cup`."""
        return self.counit @ self.mult


def classical_frobenius(n: int) -> FrobeniusData:
    """C^n with the copying comultiplication: ``m(|i>⊗|j>) = δ_ij |i>``."""
    m = np.zeros((n, n * n), dtype=complex)
    for i in range(n):
        m[i, i * n + i] = 1.0
    return FrobeniusData(n, n, m, np.ones(n, dtype=complex))


def matrix_frobenius(n: int) -> FrobeniusData:
    """M_n with matrix multiplication under ``vec``; ``m m^† = n id``."""
    d = n * n
    m = np.zeros((d, d * d), dtype=complex)
    for i in range(n):
        for b in range(n):
            for j in range(n):
                m[i * n + j, (i * n + b) * d + (b * n + j)] = 1.0
    return FrobeniusData(n, d, m, omega(n))


def transpose_map(T: SuperOp) -> SuperOp:
    """Transpose of ``T`` built from cups and caps.

    Bends each of the two legs of the input and output with the C^n cup
    ``sum_a |a>|a>`` and cap; the result equals the plain matrix transpose
    of ``T``'s ``n^2 x n^2`` representation.
    """
    n = T.n
    fr = classical_frobenius(n)
    cup = fr.cup.reshape(n, n)
    cap = fr.cap.reshape(n, n)
    # snake: (id ⊗ cap)(id ⊗ T ⊗ id)(cup ⊗ id), with the n^2 wire bent leg by leg
    out = np.einsum("ac,bd,efcd,ex,fy->abxy", cup, cup, T.tensor, cap, cap)
    return SuperOp.from_tensor(out)
