"""Spectrum classification, Jordan structure, and exceptional-point scans.

classify_spectrum clusters eigenvalues, decides reality per cluster, and
extracts Segre characteristics (Jordan block sizes per eigenvalue) from the
numerical rank staircase of powers.  Defective clusters smear computed
eigenvalues by roughly ||H|| * eps^(1/k) for a k-fold block, so the cluster
and rank cutoffs carry a dimension-power floor on top of the configured
relative tolerance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DimensionError
from .involutions import InvolutionOperator
from .numerics import DEFAULT_TOL, MACHINE_EPS, ToleranceConfig, as_square_matrix, frobenius
from .symmetry import SymmetryKind, check_symmetry
from . import catalog2x2


class RealityClass(enum.Enum):
    ALL_REAL_DIAGONALIZABLE = "all_real_diagonalizable"
    ALL_REAL_DEFECTIVE = "all_real_defective"
    CONJUGATE_PAIRS = "conjugate_pairs"
    MIXED = "mixed"


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: np.ndarray
    reality_class: RealityClass
    segre: dict
    unbroken: bool | None = None
    symmetry_holds: bool | None = None
    ambiguous: bool = False

    def block_sizes(self, eigenvalue, atol=1e-8):
        for lam, sizes in self.segre.items():
            if abs(lam - eigenvalue) <= atol:
                return sizes
        raise KeyError(f"no cluster near {eigenvalue}")


def jordan_block(lam, n: int) -> np.ndarray:
    """lam on the diagonal, units on the first superdiagonal."""
    if n < 1:
        raise DimensionError(f"need n >= 1, got {n}")
    return lam * np.eye(n, dtype=complex) + np.diag(np.ones(n - 1), 1)


def _cluster_single_linkage(values: np.ndarray, threshold: float):
    """Indices grouped so that chains of gaps <= threshold merge."""
    order = np.lexsort((values.imag, values.real))
    clusters = []
    for idx in order:
        placed = False
        for cluster in clusters:
            if any(abs(values[idx] - values[j]) <= threshold for j in cluster):
                cluster.append(idx)
                placed = True
                break
        if not placed:
            clusters.append([idx])
    # chained merges: repeat until stable (tiny inputs, cost irrelevant)
    merged = True
    while merged:
        merged = False
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                if any(abs(values[i] - values[j]) <= threshold for i in clusters[a] for j in clusters[b]):
                    clusters[a].extend(clusters[b])
                    del clusters[b]
                    merged = True
                    break
            if merged:
                break
    return clusters


def _segre_staircase(A: np.ndarray, lam: complex, multiplicity: int, cluster_radius: float, tol: ToleranceConfig):
    """Jordan block sizes at lam from ranks of (A - lam)^k.

    Rank cutoffs inflate with the cluster radius because a radius-delta
    eigenvalue error perturbs the zero singular values of the k-th power by
    about k * delta * s^(k-1).
    """
    n = A.shape[0]
    if multiplicity == 1:
        return [1]
    M = A - lam * np.eye(n)
    s_norm = max(float(np.linalg.norm(M, 2)), 1.0)
    delta = max(cluster_radius, 4.0 * MACHINE_EPS * s_norm)
    for inflate in (1.0, 8.0, 64.0):
        nullities = [0]
        power = np.eye(n, dtype=complex)
        for k in range(1, multiplicity + 1):
            power = power @ M
            sing = np.linalg.svd(power, compute_uv=False)
            cutoff = max(tol.rank_cutoff(sing[0]) if sing.size else 0.0,
                         inflate * 8.0 * k * delta * s_norm ** (k - 1))
            rank = int(np.sum(sing > cutoff))
            nullities.append(n - rank)
            if nullities[-1] >= multiplicity:
                break
        if nullities[-1] < multiplicity:
            continue
        nullities[-1] = multiplicity  # the staircase saturates at the cluster size
        # blocks of size >= k appear nullities[k] - nullities[k-1] times
        at_least = [nullities[k] - nullities[k - 1] for k in range(1, len(nullities))]
        at_least = [max(c, 0) for c in at_least]
        sizes = []
        for k in range(len(at_least)):
            exact = at_least[k] - (at_least[k + 1] if k + 1 < len(at_least) else 0)
            sizes.extend([k + 1] * max(exact, 0))
        if sum(sizes) == multiplicity:
            return sorted(sizes)
    return None


def classify_spectrum(H, tol: ToleranceConfig = DEFAULT_TOL, symmetry=None) -> SpectrumReport:
    """Eigenvalues, reality class, Segre characteristics, broken/unbroken.

    symmetry, when given, is a (SymmetryKind, operator) pair; the unbroken
    verdict is then "the symmetry holds and every eigenvalue is real".
    """
    A = as_square_matrix(H, "H")
    n = A.shape[0]
    scale = max(frobenius(A), 1.0)
    values = np.linalg.eigvals(A)
    order = np.lexsort((values.imag, values.real))
    values = values[order]

    cluster_cut = max(10.0 * tol.rel_tol * scale, 4.0 * MACHINE_EPS ** (1.0 / n) * scale)
    clusters = _cluster_single_linkage(values, cluster_cut)
    centers = [complex(np.mean(values[list(c)])) for c in clusters]
    radii = [max((abs(values[j] - ctr) for j in cluster), default=0.0) for cluster, ctr in zip(clusters, centers)]

    ambiguous = False
    for a in range(len(centers)):
        for b in range(a + 1, len(centers)):
            if abs(centers[a] - centers[b]) < 10.0 * cluster_cut:
                ambiguous = True

    reality_cut = max(tol.abs_tol, tol.rel_tol * scale, 4.0 * np.sqrt(MACHINE_EPS) * scale)
    segre = {}
    all_real, any_real, paired = True, False, True
    defective = False
    leftovers = []
    for cluster, center, radius in zip(clusters, centers, radii):
        mult = len(cluster)
        is_real = abs(center.imag) <= reality_cut
        key = complex(center.real, 0.0) if is_real else center
        if is_real:
            any_real = True
        else:
            all_real = False
            leftovers.append((center, mult))
        sizes = _segre_staircase(A, key, mult, radius, tol)
        if sizes is None:
            ambiguous = True
            sizes = [1] * mult
        if any(s > 1 for s in sizes):
            defective = True
        segre[key] = sizes
    # conjugate pairing among the non-real clusters
    pool = list(leftovers)
    while pool:
        center, mult = pool.pop(0)
        match = None
        for i, (other, omult) in enumerate(pool):
            if abs(other - center.conjugate()) <= max(2 * reality_cut, cluster_cut) and omult == mult:
                match = i
                break
        if match is None:
            paired = False
            break
        pool.pop(match)

    if all_real:
        reality = RealityClass.ALL_REAL_DEFECTIVE if defective else RealityClass.ALL_REAL_DIAGONALIZABLE
    elif not any_real and paired:
        reality = RealityClass.CONJUGATE_PAIRS
    else:
        reality = RealityClass.MIXED

    unbroken = None
    holds = None
    if symmetry is not None:
        kind, operator = symmetry
        holds = check_symmetry(kind, operator, A, tol).holds
        unbroken = bool(holds and all_real)
    return SpectrumReport(
        eigenvalues=values,
        reality_class=reality,
        segre=segre,
        unbroken=unbroken,
        symmetry_holds=holds,
        ambiguous=ambiguous,
    )


def align_pt_phases(O, H, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigenvectors rephased so that P conj(v) = v for each of them.

    Requires an unbroken, simple spectrum; with a broken symmetry the
    eigenstates stop being eigenstates of the antilinear involution and the
    call is a contract error naming the first complex eigenvalue.
    """
    if isinstance(O, InvolutionOperator):
        P = O.matrix
    else:
        P = as_square_matrix(O, "operator")
    A = as_square_matrix(H, "H")
    report = check_symmetry(SymmetryKind.PT, P, A, tol)
    if not report.holds:
        raise ContractError(f"H is not symmetric under the given parity (residual {report.residual:.3e})")
    scale = max(frobenius(A), 1.0)
    values, vectors = np.linalg.eig(A)
    order = np.lexsort((values.imag, values.real))
    values, vectors = values[order], vectors[:, order]
    reality_cut = max(tol.abs_tol, tol.rel_tol * scale, 4.0 * np.sqrt(MACHINE_EPS) * scale)
    for lam in values:
        if abs(lam.imag) > reality_cut:
            raise ContractError(f"symmetry is broken: eigenvalue {lam} is complex")
    gaps = np.abs(values[:, None] - values[None, :]) + np.eye(values.size)
    if gaps.min() <= max(10.0 * tol.rel_tol * scale, 64.0 * MACHINE_EPS * scale):
        raise ContractError("phase alignment needs a simple spectrum")
    aligned = np.empty_like(vectors)
    for k in range(values.size):
        v = vectors[:, k]
        image = P @ v.conj()
        lam_pt = complex(v.conj() @ image) / complex(v.conj() @ v)
        if abs(abs(lam_pt) - 1.0) > 1e-6:
            raise ContractError(f"eigenvector {k} is not an eigenvector of the antilinear symmetry (|lambda| = {abs(lam_pt):.6f})")
        # rotating by the half phase makes the vector a fixed point
        w = np.sqrt(lam_pt) * v
        residual = np.linalg.norm(P @ w.conj() - w)
        if residual > max(tol.abs_tol, 1e-8) * max(1.0, np.linalg.norm(w)):
            raise ContractError(f"phase alignment failed for eigenvector {k} (residual {residual:.3e})")
        aligned[:, k] = w
    return values, aligned


@dataclass(frozen=True)
class JordanChain:
    """Chain vectors at a defective eigenvalue, with the documented freedom
    that any multiple of the eigenvector can be added to the next link."""

    eigenvalue: complex
    vectors: list
    alpha: complex = 0.0

    def with_alpha(self, alpha) -> list:
        out = [self.vectors[0]]
        for k in range(1, len(self.vectors)):
            out.append(self.vectors[k] + alpha * self.vectors[k - 1])
        return out


def jordan_chain(H, lam, tol: ToleranceConfig = DEFAULT_TOL, alpha=0.0) -> JordanChain:
    """Chain (v0, v1, ...) with (H - lam) v0 = 0 and (H - lam) v_{k+1} = v_k.

    Needs geometric multiplicity one and algebraic multiplicity at least two
    at lam; a diagonalizable eigenvalue is a contract error.  Links are
    minimum-norm least-squares solutions, so alpha = 0 is the canonical
    representative.
    """
    A = as_square_matrix(H, "H")
    n = A.shape[0]
    scale = max(frobenius(A), 1.0)
    report = classify_spectrum(A, tol)
    try:
        sizes = report.block_sizes(lam, atol=max(10.0 * tol.rel_tol * scale, 4.0 * MACHINE_EPS ** (1.0 / n) * scale))
    except KeyError:
        raise ContractError(f"{lam} is not an eigenvalue of H") from None
    if sizes == [1]:
        raise ContractError(f"eigenvalue {lam} is simple; there is no Jordan chain")
    if len(sizes) != 1:
        raise ContractError(f"eigenvalue {lam} has geometric multiplicity {len(sizes)}; chain extraction expects one block")
    depth = sizes[0]
    if depth < 2:
        raise ContractError(f"eigenvalue {lam} is diagonalizable")
    M = A - complex(lam) * np.eye(n)
    _, _, vh = np.linalg.svd(M)
    v0 = vh[-1].conj()
    # fix the overall phase: largest entry real positive, for determinism
    pivot = int(np.argmax(np.abs(v0)))
    v0 = v0 * (abs(v0[pivot]) / v0[pivot])
    vectors = [v0]
    for _ in range(depth - 1):
        nxt, *_ = np.linalg.lstsq(M, vectors[-1], rcond=None)
        residual = np.linalg.norm(M @ nxt - vectors[-1])
        if residual > max(tol.abs_tol * scale, 1e-6 * np.linalg.norm(vectors[-1])):
            raise ContractError(f"chain relation unsolvable at depth {len(vectors)} (residual {residual:.3e})")
        # strip the eigenvector component so alpha = 0 is well defined
        nxt = nxt - (v0.conj() @ nxt) / (v0.conj() @ v0) * v0
        vectors.append(nxt)
    chain = JordanChain(eigenvalue=complex(lam), vectors=vectors, alpha=alpha)
    return chain


def build_pt_jordan(m: int, n: int, lam: float):
    """Parity-symmetric matrix similar to one Jordan block of size m + n.

    Returns (H, T) with T H T^{-1} the Jordan block; H carries Jordan blocks
    of size m and n on the diagonal coupled through one imaginary unit entry,
    and is symmetric under the diagonal parity of signature (m, n).  T is
    Diag{1_m, i 1_n} and the relation is exact in floating point.
    """
    if m < 1 or n < 1:
        raise DimensionError(f"need m, n >= 1, got ({m}, {n})")
    if abs(float(lam) - lam) > 0:
        raise ContractError("the construction expects a real eigenvalue")
    N = m + n
    H = np.zeros((N, N), dtype=complex)
    H[:m, :m] = jordan_block(float(lam), m)
    H[m:, m:] = jordan_block(float(lam), n)
    H[m - 1, m] = 1j
    T = np.diag(np.concatenate([np.ones(m), 1j * np.ones(n)]))
    return H, T


@dataclass(frozen=True)
class DegenerationScan:
    """Metric collapse data on the approach to an exceptional point."""

    family: str
    u: float
    gamma: float
    epsilons: np.ndarray
    omega_small: np.ndarray
    omega_large: np.ndarray
    norm_plus: np.ndarray
    norm_minus: np.ndarray
    fitted_exponents: dict = field(default_factory=dict)
    fitted_prefactors: dict = field(default_factory=dict)

    CSV_COLUMNS = ("epsilon", "omega_small", "omega_large", "norm_plus", "norm_minus")

    def rows(self):
        for k in range(self.epsilons.size):
            yield (self.epsilons[k], self.omega_small[k], self.omega_large[k], self.norm_plus[k], self.norm_minus[k])


def _loglog_fit(x, y):
    slope, intercept = np.polyfit(np.log(x), np.log(np.abs(y)), 1)
    return float(slope), float(np.exp(intercept))


def degeneration_scan(u: float, gamma: float, epsilons, family: str = "pt2") -> DegenerationScan:
    """Track metric eigenvalues and eigenvector norms as the gap closes.

    The gap parameter follows rho^2 = gamma^2 (1 - eps), approaching the
    exceptional point from the side where the metric stays positive (v is
    pinned to 0 to avoid a double limit).  Expected leading behavior:
    omega_small ~ u gamma eps / 2, omega_large -> 2 u gamma, and both
    eigenvector norms shrink linearly in eps.
    """
    if family not in ("pt2", "pseudo2"):
        raise ContractError(f"family must be 'pt2' or 'pseudo2', got {family!r}")
    eps = np.asarray(list(epsilons), dtype=float)
    if eps.size == 0:
        raise ContractError("need at least one epsilon")
    if np.any(eps <= 0.0) or np.any(eps >= 1.0):
        raise ContractError("epsilons must lie strictly inside (0, 1)")
    if eps.size > 1 and not np.all(np.diff(eps) < 0):
        raise ContractError("epsilons must be strictly decreasing")
    if u * gamma <= 0:
        raise ContractError("need u * gamma > 0 for a positive metric family")

    omega_small = np.empty_like(eps)
    omega_large = np.empty_like(eps)
    norm_plus = np.empty_like(eps)
    norm_minus = np.empty_like(eps)
    for k, e_k in enumerate(eps):
        rho = abs(gamma) * np.sqrt(1.0 - e_k)
        if family == "pt2":
            params = catalog2x2.Pt2Params(e=0.0, gamma=gamma, rho=rho, delta=0.0, u=u, v=0.0)
            fam = catalog2x2.pt2_family(params)
        else:
            params = catalog2x2.Pt2Params(e=0.0, gamma=gamma, rho=rho, delta=0.0, u=u, v=0.0)
            fam = catalog2x2.pseudo2_family(params)
        w_eigs = np.linalg.eigvalsh(fam.metric)
        omega_small[k] = w_eigs.min()
        omega_large[k] = w_eigs.max()
        norm_plus[k] = np.real(fam.vec_plus.conj() @ fam.metric @ fam.vec_plus)
        norm_minus[k] = np.real(fam.vec_minus.conj() @ fam.metric @ fam.vec_minus)

    exponents, prefactors = {}, {}
    if eps.size >= 2:
        for name, series in (("omega_small", omega_small), ("norm_plus", norm_plus), ("norm_minus", norm_minus)):
            slope, pref = _loglog_fit(eps, series)
            exponents[name] = slope
            prefactors[name] = pref
    return DegenerationScan(
        family=family,
        u=float(u),
        gamma=float(gamma),
        epsilons=eps,
        omega_small=omega_small,
        omega_large=omega_large,
        norm_plus=norm_plus,
        norm_minus=norm_minus,
        fitted_exponents=exponents,
        fitted_prefactors=prefactors,
    )
