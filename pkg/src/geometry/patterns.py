"""
Pattern-of-support geometry of x ↦ A ⊗ x.

Indices are 0-based. A pattern P = (P_1, ..., P_n) lists the argmax columns of
each row; its domain X(P) is the set of x with pattern(x) = P, and the closure
of the domain is the fixed-point set of the feasibility matrix F_P.
"""
import logging
from typing import Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

import config
from algebra.cycles import karp_cycle_mean, row_mean, star_entries
from algebra.semiring import maxplus_entries, mp_matvec
from models.pattern import Pattern, PatternGeometry, ProjectionResult
from models.tropical_matrix import TropicalMatrix, as_vector
from utils.error_handlers import DimensionError, PatternError

logger = logging.getLogger(__name__)


def _check_pattern_shape(a: np.ndarray, P: Pattern) -> None:
    if (P.n, P.d) != a.shape:
        raise DimensionError(f"pattern of shape {(P.n, P.d)} does not fit matrix of shape {a.shape}")


def compute_pattern(A, x, tie_tol: float = 0.0) -> Pattern:
    """
    Pattern of support of x: P_i = argmax_j (a_ij + x_j).

    Args:
        A: n×d max-plus matrix.
        x: Point of length d (entries may be −∞).
        tie_tol: Entries within tie_tol of the row maximum count as ties.

    Returns:
        The pattern.

    Raises:
        PatternError: If a row of A ⊗ x is −∞.
    """
    a = maxplus_entries(A)
    x = as_vector(x)
    if x.shape[0] != a.shape[1]:
        raise DimensionError(f"x has length {x.shape[0]} but A has {a.shape[1]} columns")
    with np.errstate(invalid="ignore"):
        values = a + x[None, :]
    top = np.max(values, axis=1)
    bad = np.flatnonzero(~np.isfinite(top))
    if bad.size:
        raise PatternError("(A ⊗ x)_i is not finite", details=f"rows {bad.tolist()}")
    ties = values >= (top - tie_tol)[:, None]
    return Pattern(tuple(frozenset(np.flatnonzero(row).tolist()) for row in ties), a.shape[1])


def add_row_constraints(F: np.ndarray, a_row: np.ndarray, members) -> np.ndarray:
    """
    Fold one row of a pattern into a feasibility matrix in place.

    For j in members: f_jk = max(f_jk, a_ik − a_ij).
    """
    for j in members:
        if not np.isfinite(a_row[j]):
            raise PatternError(f"pattern selects column {j} where the row entry is −∞")
        np.maximum(F[j], a_row - a_row[j], out=F[j])
    return F


def feasibility_entries(a: np.ndarray, P: Pattern) -> np.ndarray:
    """Raw feasibility matrix F_P, zero diagonal, −∞ where no row constrains."""
    _check_pattern_shape(a, P)
    d = a.shape[1]
    F = np.full((d, d), -np.inf)
    for i, members in enumerate(P.sets):
        add_row_constraints(F, a[i], members)
    np.fill_diagonal(F, 0.0)
    return F


def feasibility_matrix(A, P: Pattern) -> TropicalMatrix:
    """
    Feasibility matrix F_P with f_jj = 0 and f_jk = max_{i: j ∈ P_i} (a_ik − a_ij).

    Args:
        A: n×d max-plus matrix.
        P: Pattern of the same shape.

    Returns:
        d×d max-plus matrix.
    """
    return TropicalMatrix.maxplus(feasibility_entries(maxplus_entries(A), P))


def is_feasible(A, P: Pattern, tol: float = config.FEASIBILITY_TOL) -> bool:
    """
    Whether the domain of P is non-empty, i.e. λ(F_P) = 0.

    The zero diagonal makes λ >= 0, so the test is λ <= tol.
    """
    return karp_cycle_mean(feasibility_entries(maxplus_entries(A), P)) <= tol


def equivalence_classes(P: Pattern) -> Tuple[Tuple[Tuple[int, ...], ...], np.ndarray, np.ndarray]:
    """
    Classes of the transitive closure of "j and k share some P_i".

    Returns:
        (classes, class_of, ell): classes ordered by smallest member, the class
        index of every column, and the subpattern ℓ(i) = min(P_i).
    """
    membership = P.membership().astype(np.int64)
    adjacency = csr_matrix(membership.T @ membership > 0)
    _, labels = connected_components(adjacency, directed=False)

    # relabel so classes are numbered by their smallest column
    order = {}
    for j, label in enumerate(labels):
        order.setdefault(label, len(order))
    class_of = np.array([order[label] for label in labels], dtype=int)
    classes = tuple(
        tuple(np.flatnonzero(class_of == c).tolist()) for c in range(len(order))
    )
    return classes, class_of, P.subpattern()


def pattern_geometry(A, P: Pattern) -> PatternGeometry:
    """
    Feasibility matrix, cycle mean, classes, class map and subpattern of P.
    """
    a = maxplus_entries(A)
    F = feasibility_entries(a, P)
    classes, class_of, ell = equivalence_classes(P)
    return PatternGeometry(
        pattern=P,
        F=TropicalMatrix.maxplus(F),
        classes=classes,
        class_of=class_of,
        ell=ell,
        lam=karp_cycle_mean(F),
    )


def complete_below(A, x, margin: float = 1.0) -> np.ndarray:
    """
    Replace −∞ coordinates by finite values that never attain a row maximum.

    x_j = min_i ((A ⊗ x)_i − a_ij) − margin over rows where both terms are
    finite, so A ⊗ x and the pattern are unchanged. Coordinates whose column
    touches no such row stay −∞.
    """
    a = maxplus_entries(A)
    x = as_vector(x)
    missing = np.flatnonzero(np.isneginf(x))
    if missing.size == 0:
        return x
    image = mp_matvec(a, x)
    completed = x.copy()
    for j in missing:
        rows = np.isfinite(a[:, j]) & np.isfinite(image)
        if rows.any():
            completed[j] = float(np.min(image[rows] - a[rows, j])) - margin
    return completed


def interior_point(A, P: Pattern) -> np.ndarray:
    """
    A point of the relative interior of the domain of a feasible pattern.

    Support coordinates are the row means of F_P* (the average of its
    columns); other coordinates are completed below every row maximum.

    Raises:
        StarDivergesError: If P is not feasible.
        PatternError: If F_P* is infinite on the support rows.
    """
    a = maxplus_entries(A)
    star = star_entries(feasibility_entries(a, P))
    support = P.support_mask()
    x = np.full(P.d, -np.inf)
    x[support] = row_mean(TropicalMatrix.maxplus(star[support]))
    return complete_below(a, x)


def class_anchor(A, P: Pattern) -> np.ndarray:
    """
    A point satisfying the equalities a_ij + x_j = a_ik + x_k for j, k ∈ P_i.

    Each class is rooted at 0 on its smallest column; off-support entries are
    −∞. Ψ does not depend on the root values, so this serves as a point of
    the closure whenever only class offsets matter.
    """
    a = maxplus_entries(A)
    _check_pattern_shape(a, P)
    x = np.full(P.d, np.nan)
    rows_of = [[] for _ in range(P.d)]
    for i, members in enumerate(P.sets):
        for j in members:
            rows_of[j].append(i)

    for root in sorted(P.support):
        if not np.isnan(x[root]):
            continue
        x[root] = 0.0
        stack = [root]
        while stack:
            j = stack.pop()
            for i in rows_of[j]:
                for k in P.sets[i]:
                    if np.isnan(x[k]):
                        x[k] = x[j] + a[i, j] - a[i, k]
                        stack.append(k)
    x[np.isnan(x)] = -np.inf
    return x


def is_fixed_point(F: np.ndarray, v: np.ndarray, tol: float = config.ADMISSIBILITY_TOL) -> bool:
    """
    Whether F ⊗ v = v for a feasibility matrix F (zero diagonal, so F ⊗ v >= v).
    """
    image = mp_matvec(F, v)
    finite = np.isfinite(v)
    if np.any(np.isfinite(image[~finite])):
        return False
    return bool(np.all(image[finite] - v[finite] <= tol))


def normal_projection(A, P: Pattern, y, x_P, keep_off_support: bool = False,
                      geometry: Optional[PatternGeometry] = None,
                      tol: float = config.ADMISSIBILITY_TOL) -> ProjectionResult:
    """
    Normal projection Φ(P, y) and closest local minimum Ψ(P, y, x_P).

    Row residuals y − (x_P[ℓ] + a_{iℓ(i)}) are averaged over the rows mapped to
    each class; classes without rows get offset 0. phi adds each row's class
    offset to its current value, psi shifts every support coordinate by its
    class offset.

    Args:
        A: n×d max-plus matrix.
        P: Feasible pattern.
        y: Target, length n.
        x_P: Point of the closure of the domain (or the caller's iterate).
        keep_off_support: Keep x_P off the support instead of −∞.
        geometry: Precomputed pattern_geometry(A, P).
        tol: Tolerance of the admissibility fixed-point test.

    Returns:
        ProjectionResult with admissible = (F_P ⊗ Ψ = Ψ) for the −∞ completion.
    """
    a = maxplus_entries(A)
    _check_pattern_shape(a, P)
    y = as_vector(y, "y")
    x_P = as_vector(x_P, "x_P")
    if geometry is None:
        geometry = pattern_geometry(a, P)

    ell = geometry.ell
    rows = np.arange(P.n)
    base = a[rows, ell] + x_P[ell]
    if not np.all(np.isfinite(base)):
        raise PatternError("x_P must be finite on the subpattern columns")

    row_class = geometry.class_of[ell]
    m = geometry.class_count
    sums = np.bincount(row_class, weights=y - base, minlength=m)
    counts = np.bincount(row_class, minlength=m)
    offsets = np.divide(sums, counts, out=np.zeros(m), where=counts > 0)

    phi = base + offsets[row_class]
    support = P.support_mask()
    shifted = x_P + offsets[geometry.class_of]
    psi = np.where(support, shifted, x_P if keep_off_support else -np.inf)

    admissible = is_fixed_point(geometry.F.entries, np.where(support, shifted, -np.inf), tol)
    residual_sq = float(np.sum((phi - y) ** 2))
    return ProjectionResult(phi=phi, psi=psi, admissible=admissible,
                            residual_sq=residual_sq, support=support)


def is_admissible(A, P: Pattern, y, tol: float = config.ADMISSIBILITY_TOL) -> bool:
    """
    Whether Φ(P, y) lies in the closure of the image of the domain of P.
    """
    return normal_projection(A, P, y, class_anchor(A, P), tol=tol).admissible


def local_residual(A, P: Pattern, x, y) -> float:
    """
    Local squared residual R_P(x) = ‖x[ℓ] + a_ℓ − y‖² / 2.

    Equals R(x) = ‖A ⊗ x − y‖² / 2 on the closure of the domain of P.
    """
    a = maxplus_entries(A)
    _check_pattern_shape(a, P)
    x = as_vector(x)
    y = as_vector(y, "y")
    ell = P.subpattern()
    values = a[np.arange(P.n), ell] + x[ell]
    return 0.5 * float(np.sum((values - y) ** 2))
