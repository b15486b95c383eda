"""Membership checks and canonical constructors for the three matrix classes.

A matrix H belongs to a class when an operator O of the right family
intertwines it the right way:

* parity-conjugation symmetric (PT):   O H = conj(H) O,  O a real involution
* pseudo-Hermitian:                    O H = adj(H) O,   O a Hermitian involution
* generalized PT:                      O conj(H) = H O,  O an antilinear core

Constructors build the canonical block/diagonal-frame representative for each
class; check_symmetry reports the intertwining residual for any pair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionError, IndeterminateStructureError
from .involutions import InvolutionKind, InvolutionOperator, verify_involution
from .numerics import DEFAULT_TOL, MACHINE_EPS, ToleranceConfig, as_matrix, as_square_matrix, frobenius


class SymmetryKind(enum.Enum):
    PT = "pt"
    PSEUDO = "pseudo"
    GEN_PT = "gen_pt"


_REQUIRED_OPERATOR_KIND = {
    SymmetryKind.PT: InvolutionKind.REAL_INVOLUTION,
    SymmetryKind.PSEUDO: InvolutionKind.HERMITIAN_INVOLUTION,
    SymmetryKind.GEN_PT: InvolutionKind.ANTILINEAR_CORE,
}


@dataclass(frozen=True)
class SymmetryReport:
    kind: SymmetryKind
    holds: bool
    residual: float
    operator_ok: bool
    operator_residuals: dict


def _operator_matrix(O) -> np.ndarray:
    if isinstance(O, InvolutionOperator):
        return O.matrix
    return as_square_matrix(O, "operator")


def check_symmetry(kind: SymmetryKind, O, H, tol: ToleranceConfig = DEFAULT_TOL) -> SymmetryReport:
    """Verdict and residual for the intertwining identity of `kind`.

    The operator is validated against the kind's family first; a mismatch is
    a contract error (the identity would be meaningless), while a failing
    intertwining check is just reported.
    """
    P = _operator_matrix(O)
    A = as_square_matrix(H, "H")
    if P.shape != A.shape:
        raise DimensionError(f"operator is {P.shape} but H is {A.shape}")
    op_check = verify_involution(P, _REQUIRED_OPERATOR_KIND[kind], tol)
    if not op_check.ok:
        raise ContractError(
            f"{kind.value} needs a {_REQUIRED_OPERATOR_KIND[kind].value} operator; residuals {op_check.residuals}"
        )
    if kind is SymmetryKind.PT:
        gap = P @ A - A.conj() @ P
    elif kind is SymmetryKind.PSEUDO:
        gap = P @ A - A.conj().T @ P
    else:
        gap = P @ A.conj() - A @ P
    scale = frobenius(A)
    raw = frobenius(gap)
    residual = raw / scale if scale > 0 else raw
    holds = raw <= max(tol.abs_tol, tol.rel_tol * scale)
    return SymmetryReport(
        kind=kind,
        holds=bool(holds),
        residual=float(residual),
        operator_ok=True,
        operator_residuals=op_check.residuals,
    )


@dataclass(frozen=True)
class PtBlockParams:
    """Real blocks (A, B; C, D) of the diagonal-parity PT canonical form."""

    m: int
    n: int
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        for name, want in (("A", (self.m, self.m)), ("B", (self.m, self.n)), ("C", (self.n, self.m)), ("D", (self.n, self.n))):
            block = np.asarray(getattr(self, name), dtype=float)
            if block.shape != want:
                raise DimensionError(f"block {name} must have shape {want}, got {block.shape}")
            if not np.all(np.isfinite(block)):
                raise ContractError(f"block {name} contains NaN or Inf")
            object.__setattr__(self, name, block)


def construct_pt_block(p: PtBlockParams) -> np.ndarray:
    """[[A, iB], [iC, D]] with all blocks real; exactly parity-conjugation
    symmetric for the diagonal parity of signature (m, n)."""
    top = np.hstack([p.A.astype(complex), 1j * p.B])
    bottom = np.hstack([1j * p.C, p.D.astype(complex)])
    return np.vstack([top, bottom])


@dataclass(frozen=True)
class PseudoBlockParams:
    """Hermitian A, D and free complex B of the diagonal-metric canonical form."""

    m: int
    n: int
    A: np.ndarray
    B: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        B = as_matrix(self.B, "B") if self.m and self.n else np.zeros((self.m, self.n), dtype=complex)
        D = as_matrix(self.D, "D")
        if A.shape != (self.m, self.m) or D.shape != (self.n, self.n) or B.shape != (self.m, self.n):
            raise DimensionError(f"blocks must be ({self.m},{self.m}), ({self.m},{self.n}), ({self.n},{self.n})")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "D", D)

    def validate_hermitian(self, tol: ToleranceConfig = DEFAULT_TOL):
        for name, block in (("A", self.A), ("D", self.D)):
            if block.size and frobenius(block - block.conj().T) > tol.abs_tol * max(1.0, frobenius(block)):
                raise ContractError(f"block {name} must be Hermitian")


def construct_pseudo_block(p: PseudoBlockParams, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """[[A, iB], [i adj(B), D]]; pseudo-Hermitian for Diag{1_m, -1_n}.

    With B = 0 the output is the Hermitian block-diagonal limit.
    """
    p.validate_hermitian(tol)
    top = np.hstack([p.A, 1j * p.B])
    bottom = np.hstack([1j * p.B.conj().T, p.D])
    return np.vstack([top, bottom])


@dataclass(frozen=True)
class RotatedHermitianParams:
    """Data of the anti-diagonal-metric canonical form.

    a[i, j] (and b[i, j]) feed entry (i, j) on or above the anti-diagonal,
    0-indexed: positions with i + j <= n - 1.  On the anti-diagonal itself
    (i + j == n - 1) the entry is real and b is ignored.  Entries below are
    the conjugates of their mirror across the anti-diagonal.
    """

    n: int
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.shape != (self.n, self.n) or b.shape != (self.n, self.n):
            raise DimensionError(f"a and b must be {self.n}x{self.n} real arrays")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ContractError("a and b must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def construct_rotated_hermitian(p: RotatedHermitianParams) -> np.ndarray:
    """Matrix that is pseudo-Hermitian for the anti-diagonal permutation S_n.

    Looks like a Hermitian matrix reflected onto the anti-diagonal; setting
    the diagonal data to lambda and the first superdiagonal data to 1 yields
    a Jordan block of order n.
    """
    n = p.n
    H = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if i + j < n - 1:
                H[i, j] = p.a[i, j] + 1j * p.b[i, j]
            elif i + j == n - 1:
                H[i, j] = p.a[i, j]
            else:
                mi, mj = n - 1 - j, n - 1 - i
                if mi + mj < n - 1:
                    H[i, j] = p.a[mi, mj] - 1j * p.b[mi, mj]
                else:
                    H[i, j] = p.a[mi, mj]
    return H


@dataclass(frozen=True)
class DiagPhaseGenPtParams:
    """Real amplitudes r[i, j] and diagonal phases of the diagonal-core form."""

    phases: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        phases = np.atleast_1d(np.asarray(self.phases, dtype=float))
        r = np.asarray(self.r, dtype=float)
        N = phases.size
        if r.shape != (N, N):
            raise DimensionError(f"r must be {N}x{N} to match {N} phases")
        if not (np.all(np.isfinite(phases)) and np.all(np.isfinite(r))):
            raise ContractError("phases and r must be finite")
        object.__setattr__(self, "phases", phases)
        object.__setattr__(self, "r", r)


def gen_pt_diag_operator(phases) -> np.ndarray:
    """Diagonal antilinear core Diag{e^{i alpha_k}} (pure phases)."""
    phases = np.atleast_1d(np.asarray(phases, dtype=float))
    return np.diag(np.exp(1j * phases))


def construct_gen_pt_diag(p: DiagPhaseGenPtParams) -> np.ndarray:
    """Entry (i, j) carries amplitude r[i, j] and phase (alpha_i - alpha_j)/2,
    which makes the matrix commute with Diag{e^{i alpha}} followed by
    conjugation."""
    alpha = p.phases
    phase = np.exp(1j * (alpha[:, None] - alpha[None, :]) / 2.0)
    return p.r * phase


@dataclass(frozen=True)
class DiagMetricSelfAdjointParams:
    """Positive metric eigenvalues plus real symmetric/antisymmetric data.

    a[i, j] for i <= j carries the shared real part of the (i, j) mirror pair
    (diagonal included); b[i, j] for i < j the shared imaginary part.
    """

    omegas: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        omegas = np.atleast_1d(np.asarray(self.omegas, dtype=float))
        N = omegas.size
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.shape != (N, N) or b.shape != (N, N):
            raise DimensionError(f"a and b must be {N}x{N}")
        if not (np.all(np.isfinite(omegas)) and np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ContractError("omegas, a, b must be finite")
        if np.any(omegas <= 0):
            raise ContractError(f"all metric eigenvalues must be positive, got {omegas}")
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def metric(self) -> np.ndarray:
        return np.diag(self.omegas).astype(complex)


def construct_self_adjoint_from_diag_metric(p: DiagMetricSelfAdjointParams) -> np.ndarray:
    """Most general matrix self-adjoint under the diagonal metric Diag{omega}.

    Diagonal entries are real; mirrored off-diagonal entries share phase up to
    conjugation and their moduli sit in the ratio omega_j / omega_i.  All
    omegas equal reduces to a plain Hermitian matrix.
    """
    w = p.omegas
    N = w.size
    H = np.zeros((N, N), dtype=complex)
    for i in range(N):
        H[i, i] = p.a[i, i]
        for j in range(i + 1, N):
            z = p.a[i, j] + 1j * p.b[i, j]
            H[i, j] = 2.0 * w[j] / (w[i] + w[j]) * z
            H[j, i] = 2.0 * w[i] / (w[i] + w[j]) * z.conj()
    return H


def _pair_with_conjugates(values: np.ndarray, tol_match: float):
    """Greedy pairing of a spectrum with its conjugate; smallest index wins ties.

    Returns (real_indices, pair_list) or None when some eigenvalue has no
    conjugate partner within tol_match.
    """
    order = np.arange(values.size)
    unused = list(order)
    reals, pairs = [], []
    while unused:
        k = unused.pop(0)
        lam = values[k]
        if abs(lam.imag) <= tol_match:
            reals.append(k)
            continue
        best, best_dist = None, np.inf
        for j in unused:
            dist = abs(values[j] - lam.conjugate())
            if dist < best_dist - 1e-30:
                best, best_dist = j, dist
        if best is None or best_dist > tol_match:
            return None
        unused.remove(best)
        if lam.imag > 0:
            pairs.append((k, best))
        else:
            pairs.append((best, k))
    return reals, pairs


def find_gen_pt_operator(H, tol: ToleranceConfig = DEFAULT_TOL):
    """Antilinear core making H generalized-PT symmetric, if one is found.

    H similar to a real matrix is what the symmetry demands, so the search
    builds a similarity that realifies H from an eigendecomposition, pairing
    conjugate eigenvalues into real 2x2 rotation blocks.  Returns None when
    the spectrum is not closed under conjugation.  Defective inputs are
    handled only via a small battery of exact candidates (identity and
    diagonal sign patterns, which cover this package's own Jordan
    constructions); anything beyond that raises
    IndeterminateStructureError rather than guessing.
    """
    A = as_square_matrix(H, "H")
    N = A.shape[0]
    scale = max(frobenius(A), 1.0)
    if frobenius(A - A.conj()) <= tol.abs_tol * scale:
        return InvolutionOperator(kind=InvolutionKind.ANTILINEAR_CORE, matrix=np.eye(N, dtype=complex))

    values, vectors = np.linalg.eig(A)
    tol_match = max(tol.rel_tol * scale, 64.0 * N * MACHINE_EPS * scale)
    pairing = _pair_with_conjugates(values, tol_match)
    if pairing is None:
        return None
    reals, pairs = pairing

    def _candidate_batteries():
        yield np.eye(N, dtype=complex)
        for m in range(N + 1):
            yield np.diag(np.concatenate([np.ones(m), -np.ones(N - m)])).astype(complex)

    def _try_candidates():
        for cand in _candidate_batteries():
            if frobenius(cand @ A.conj() - A @ cand) <= tol.abs_tol * scale:
                return InvolutionOperator(kind=InvolutionKind.ANTILINEAR_CORE, matrix=cand)
        return None

    # Defectiveness shows up as an ill-conditioned eigenvector matrix; the
    # eigenvector route is then meaningless and only exact candidates remain.
    sigma = np.linalg.svd(vectors, compute_uv=False)
    if sigma[-1] <= 1e-7 * sigma[0]:
        found = _try_candidates()
        if found is not None:
            return found
        raise IndeterminateStructureError(
            "spectrum is conjugation-closed but H appears defective; Jordan-level realification is not certified here"
        )

    # Columns: real eigenvalues keep their eigenvector; each conjugate pair
    # (v, w) contributes V [[1, 1], [-i, i]]^{-1}, turning diag(lam, conj lam)
    # into the real rotation-scale block.
    columns = np.zeros((N, N), dtype=complex)
    pos = 0
    for k in reals:
        columns[:, pos] = vectors[:, k]
        pos += 1
    half = 0.5
    for k_plus, k_minus in pairs:
        v, w = vectors[:, k_plus], vectors[:, k_minus]
        columns[:, pos] = half * (v + w)
        columns[:, pos + 1] = half * 1j * (v - w)
        pos += 2
    sig = np.linalg.svd(columns, compute_uv=False)
    if sig[-1] <= 1e-10 * sig[0]:
        raise IndeterminateStructureError("realifying similarity is numerically singular")
    core = columns @ np.linalg.inv(columns.conj())
    intertwine = frobenius(core @ A.conj() - A @ core)
    core_check = verify_involution(core, InvolutionKind.ANTILINEAR_CORE, tol)
    if core_check.ok and intertwine <= max(tol.abs_tol, tol.rel_tol * scale):
        return InvolutionOperator(kind=InvolutionKind.ANTILINEAR_CORE, matrix=core)
    found = _try_candidates()
    if found is not None:
        return found
    raise IndeterminateStructureError(
        f"constructed operator misses its invariants (intertwining {intertwine:.3e}, core {core_check.residuals})"
    )
