"""Dense complex matrix kernels used by every other module.

Everything here is a thin, contract-checked layer over LAPACK (via numpy and
scipy): eigendecomposition with a deterministic ordering, SVD-based rank and
nullspace decisions with one audited cutoff, the matrix exponential, and the
real vectorization that turns complex matrices into flat real vectors for
parameter counting and linear constraint solves.

All matrices in scope are small (desk scale, <= 64x64); no sparse paths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ContractError, DimensionError, NumericalError

MACHINE_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class ToleranceConfig:
    """Shared tolerance knobs.

    rank_tol_factor multiplies (largest singular value * machine epsilon)
    for every numerical rank decision, so all parameter counts hang off a
    single audited cutoff.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    rank_tol_factor: float = 64.0

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "rank_tol_factor"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise ContractError(f"{name} must be a nonnegative finite real, got {value!r}")

    def rank_cutoff(self, sigma_max: float) -> float:
        return self.rank_tol_factor * sigma_max * MACHINE_EPS


DEFAULT_TOL = ToleranceConfig()


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and return M as a finite complex128 2-d array."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got ndim={A.ndim}")
    if A.size == 0:
        raise DimensionError(f"{name} must be non-empty")
    if not np.all(np.isfinite(A.real)) or not np.all(np.isfinite(A.imag)):
        raise ContractError(f"{name} contains NaN or Inf entries")
    return A


def as_square_matrix(M, name: str = "matrix") -> np.ndarray:
    A = as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    return A


def frobenius(M) -> float:
    return float(np.linalg.norm(np.asarray(M)))


def vectorize(M) -> np.ndarray:
    """Complex matrix -> flat real vector, interleaved (Re, Im), row-major.

    The round trip through devectorize is bit-exact.
    """
    A = np.asarray(M, dtype=complex).ravel()
    out = np.empty(2 * A.size, dtype=float)
    out[0::2] = A.real
    out[1::2] = A.imag
    return out


def devectorize(vec, rows: int, cols: int) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    if v.size != 2 * rows * cols:
        raise DimensionError(f"expected {2 * rows * cols} reals for a {rows}x{cols} matrix, got {v.size}")
    return (v[0::2] + 1j * v[1::2]).reshape(rows, cols)


def eigen_decompose(M, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigenvalues and right eigenvectors, sorted lexicographically by (Re, Im).

    Returns (eigenvalues, vectors) with vectors[:, k] the unit eigenvector for
    eigenvalues[k].  The ordering is deterministic so downstream golden-file
    tests stay stable.
    """
    A = as_square_matrix(M)
    try:
        values, vectors = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericalError(f"eigendecomposition did not converge: {exc}") from exc
    order = np.lexsort((values.imag, values.real))
    values = values[order]
    vectors = vectors[:, order]
    scale = frobenius(A)
    residual = np.linalg.norm(A @ vectors - vectors * values[np.newaxis, :], axis=0)
    bound = max(tol.rel_tol * max(scale, 1.0), 64.0 * MACHINE_EPS)
    if np.any(residual > bound):  # pragma: no cover - defensive
        raise NumericalError(f"eigenpair residual {residual.max():.3e} exceeds {bound:.3e}")
    return values, vectors


def rank_and_nullspace(L, tol: ToleranceConfig = DEFAULT_TOL):
    """Numerical rank and an orthonormal nullspace basis of a real matrix.

    Returns (rank, basis) where basis has one column per nullspace direction.
    """
    A = np.asarray(L, dtype=float)
    if A.ndim != 2:
        raise DimensionError(f"expected a 2-d real matrix, got ndim={A.ndim}")
    if not np.all(np.isfinite(A)):
        raise ContractError("rank_and_nullspace requires finite entries")
    if A.size == 0 or not np.any(A):
        cols = A.shape[1] if A.ndim == 2 else 0
        return 0, np.eye(cols)
    _, s, vt = np.linalg.svd(A, full_matrices=True)
    cutoff = tol.rank_cutoff(s[0]) if s.size else 0.0
    rank = int(np.sum(s > cutoff))
    return rank, vt[rank:].T.copy()


def nullspace_complex(L, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal nullspace basis (columns) of a complex matrix."""
    A = np.asarray(L, dtype=complex)
    if A.size == 0 or not np.any(A):
        return np.eye(A.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    cutoff = tol.rank_cutoff(s[0]) if s.size else 0.0
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T.copy()


def matrix_exponential(A) -> np.ndarray:
    """exp(A) by scaling-and-squaring (scipy); exp(0) is exactly the identity."""
    M = as_square_matrix(A)
    if not np.any(M):
        return np.eye(M.shape[0], dtype=complex)
    return np.asarray(scipy.linalg.expm(M), dtype=complex)


def solve_or_raise(T, B=None):
    """T^{-1} B (or T^{-1}), raising NumericalError when T is singular."""
    A = as_square_matrix(T, "transformation")
    n = A.shape[0]
    sigma = np.linalg.svd(A, compute_uv=False)
    if sigma[-1] <= 64.0 * n * MACHINE_EPS * sigma[0]:
        raise NumericalError(f"transformation is singular to working precision (cond ~ {sigma[0] / max(sigma[-1], 1e-300):.2e})")
    rhs = np.eye(n, dtype=complex) if B is None else np.asarray(B, dtype=complex)
    return np.linalg.solve(A, rhs)


def real_matrix_of_map(fn, rows: int, cols: int) -> np.ndarray:
    """Real matrix of a real-linear map on complex matrices.

    fn maps a (rows, cols) complex matrix to a complex matrix of fixed shape;
    the result acts on vectorize(...) coordinates.  Conjugations inside fn are
    allowed since the matrix is assembled column by column over a real basis.
    """
    dim_in = 2 * rows * cols
    columns = []
    for k in range(dim_in):
        e = np.zeros(dim_in)
        e[k] = 1.0
        columns.append(vectorize(fn(devectorize(e, rows, cols))))
    return np.column_stack(columns)


def hermitian_basis(n: int) -> list[np.ndarray]:
    """Orthonormal (Frobenius) basis of n x n Hermitian matrices, n^2 elements."""
    basis = []
    for k in range(n):
        E = np.zeros((n, n), dtype=complex)
        E[k, k] = 1.0
        basis.append(E)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for k in range(n):
        for l in range(k + 1, n):
            E = np.zeros((n, n), dtype=complex)
            E[k, l] = inv_sqrt2
            E[l, k] = inv_sqrt2
            basis.append(E)
            F = np.zeros((n, n), dtype=complex)
            F[k, l] = 1j * inv_sqrt2
            F[l, k] = -1j * inv_sqrt2
            basis.append(F)
    return basis


def antihermitian_basis(n: int) -> list[np.ndarray]:
    return [1j * B for B in hermitian_basis(n)]
