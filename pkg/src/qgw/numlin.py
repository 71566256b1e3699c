"""Dense complex linear algebra primitives.

All predicates take an absolute/relative tolerance ``tol`` (default
:data:`DEFAULT_TOL`). Ranks use a relative threshold
``sigma > tol * max(1, sigma_max)`` so that the many ``1/n``-scaled
matrices in this package behave the same at every ``n``.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from .errors import InputError, SingularityError

__all__ = [
    "DEFAULT_TOL",
    "as_matrix",
    "rank",
    "is_projector",
    "is_isometry",
    "is_unitary",
    "inv_sqrt_psd",
    "subspace_intersection_dim",
    "random_isometry",
    "range_basis",
    "max_abs",
    "ones",
    "J",
]

DEFAULT_TOL = 1e-8


def as_matrix(M: npt.ArrayLike, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a finite 2-D complex array (a copy).

    Raises
    ------
    InputError
        If ``M`` is not two-dimensional or has NaN/Inf entries.
    """
    arr = np.array(M, dtype=complex)
    if arr.ndim != 2:
        raise InputError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} has non-finite entries")
    return arr


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not tol > 0 or not np.isfinite(tol):
        raise InputError(f"tolerance must be a positive finite number, got {tol}")
    return tol


def max_abs(M: npt.ArrayLike) -> float:
    """Largest absolute entry (0 for empty arrays)."""
    arr = np.asarray(M)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def rank(M: npt.ArrayLike, tol: float = DEFAULT_TOL) -> int:
    """Numerical rank with a relative singular-value threshold.

    Parameters
    ----------
    M : array_like
        Finite 2-D matrix.
    tol : float
        Singular values ``> tol * max(1, sigma_max)`` are counted.

    Returns
    -------
    int
    """
    tol = _check_tol(tol)
    arr = as_matrix(M)
    if arr.size == 0:
        return 0
    s = np.linalg.svd(arr, compute_uv=False)
    smax = float(s[0]) if s.size else 0.0
    return int(np.sum(s > tol * max(1.0, smax)))


def _square(M: npt.ArrayLike, name: str) -> np.ndarray:
    arr = as_matrix(M, name)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"{name} must be square, got shape {arr.shape}")
    return arr


def is_projector(M: npt.ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``M`` is an orthogonal projector entrywise within ``tol``."""
    tol = _check_tol(tol)
    arr = _square(M, "projector")
    return max_abs(arr @ arr - arr) <= tol and max_abs(arr.conj().T - arr) <= tol


def is_isometry(V: npt.ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``V^dagger V = I_k`` within ``tol``.

    Raises
    ------
    InputError
        If ``V`` has more columns than rows.
    """
    tol = _check_tol(tol)
    arr = as_matrix(V, "isometry")
    n, k = arr.shape
    if k > n:
        raise InputError(f"no isometry C^{k} -> C^{n} exists (k > n)")
    return max_abs(arr.conj().T @ arr - np.eye(k)) <= tol


def is_unitary(U: npt.ArrayLike, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``U`` is square and ``U^dagger U = I`` within ``tol``."""
    arr = _square(U, "unitary")
    return is_isometry(arr, tol)


def inv_sqrt_psd(F: npt.ArrayLike, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Inverse square root of a Hermitian positive definite matrix.

    Computed from a Hermitian eigendecomposition, so the result ``G`` is
    Hermitian and ``G F G = I``.

    Raises
    ------
    SingularityError
        If an eigenvalue is ``<= tol``.
    InputError
        If ``F`` is not square or not Hermitian within ``tol``.
    """
    tol = _check_tol(tol)
    arr = _square(F, "F")
    if max_abs(arr - arr.conj().T) > tol * max(1.0, max_abs(arr)):
        raise InputError("F must be Hermitian")
    w, U = np.linalg.eigh((arr + arr.conj().T) / 2)
    if w.size and w.min() <= tol:
        raise SingularityError(f"F is not positive definite (smallest eigenvalue {w.min():.3e})")
    return (U * (1.0 / np.sqrt(w))) @ U.conj().T


def subspace_intersection_dim(U: npt.ArrayLike, W: npt.ArrayLike, tol: float = DEFAULT_TOL) -> int:
    """Dimension of ``col(U) ∩ col(W)`` for orthonormal-column ``U``, ``W``.

    Uses ``k_U + k_W - rank([U | W])``.
    """
    U = as_matrix(U, "U")
    W = as_matrix(W, "W")
    if U.shape[0] != W.shape[0]:
        raise InputError("U and W must live in the same ambient space")
    for name, X in (("U", U), ("W", W)):
        if X.shape[1] > X.shape[0] or not is_isometry(X, max(tol, 1e-10) * 10):
            raise InputError(f"{name} must have orthonormal columns")
    return U.shape[1] + W.shape[1] - rank(np.hstack([U, W]), tol)


def random_isometry(n: int, k: int, seed: int | np.random.Generator | None = 0) -> np.ndarray:
    """Haar-random ``n x k`` isometry from orthonormalized Gaussian columns.

    Parameters
    ----------
    n, k : int
        ``1 <= k <= n``.
    seed : int or numpy.random.Generator
        The same integer seed always gives a bit-identical result.
    """
    if not (1 <= k <= n):
        raise InputError(f"need 1 <= k <= n, got n={n}, k={k}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Z = (rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    phases = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    return Q * phases


def range_basis(M: npt.ArrayLike, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the column space of ``M``."""
    arr = as_matrix(M)
    if arr.size == 0:
        return np.zeros((arr.shape[0], 0), dtype=complex)
    U, s, _ = np.linalg.svd(arr, full_matrices=False)
    smax = float(s[0]) if s.size else 0.0
    r = int(np.sum(s > tol * max(1.0, smax)))
    return U[:, :r]


def ones(n: int) -> np.ndarray:
    """The all-ones vector of length ``n``."""
    return np.ones(n, dtype=complex)


def J(n: int) -> np.ndarray:
    """The all-ones ``n x n`` matrix."""
    return np.ones((n, n), dtype=complex)
