"""
Cycle means, Kleene star and min-plus shortest-path closure.
"""
import logging

import numpy as np

import config
from algebra.semiring import negate_iso
from models import Semiring
from models.tropical_matrix import CycleMean, TropicalMatrix
from utils.error_handlers import (
    DimensionError, NegativeCycleError, PatternError, SemiringMismatchError, StarDivergesError
)

logger = logging.getLogger(__name__)


def _require_square(B: TropicalMatrix, operation: str) -> None:
    if not B.is_square:
        raise DimensionError(f"{operation} needs a square matrix, got {B.shape}")


def karp_cycle_mean(b: np.ndarray) -> float:
    """
    Maximum cycle mean of a raw max-plus array by Karp's algorithm.

    Walk weights start at 0 in every vertex, so each vertex acts as a source
    and the digraph need not be strongly connected. Entry b[u, v] is the
    weight of edge u → v; −∞ means no edge.

    Args:
        b: Square float array.

    Returns:
        λ(b), or −∞ if the finite-entry digraph is acyclic.
    """
    n = b.shape[0]
    walks = np.full((n + 1, n), -np.inf)
    walks[0] = 0.0
    for k in range(1, n + 1):
        # walks[k, v] = max_u walks[k-1, u] + b[u, v]
        with np.errstate(invalid="ignore"):
            walks[k] = np.max(walks[k - 1][:, None] + b, axis=0)

    final = walks[n]
    reachable = np.isfinite(final)
    if not reachable.any():
        return -np.inf

    lengths = (n - np.arange(n))[:, None]
    with np.errstate(invalid="ignore"):
        ratios = (final[None, :] - walks[:n]) / lengths
    # walks[k, v] = −∞ gives +∞, which never wins the minimum
    ratios = np.where(np.isfinite(walks[:n]), ratios, np.inf)
    per_vertex = np.min(ratios, axis=0)
    return float(np.max(per_vertex[reachable]))


def max_cycle_mean(B: TropicalMatrix) -> CycleMean:
    """
    Maximum cycle mean λ(B) of a max-plus matrix.

    Args:
        B: Square max-plus matrix.

    Returns:
        CycleMean with value −∞ when no cycle exists.
    """
    _require_square(B, "max_cycle_mean")
    if B.semiring is not Semiring.MAX_PLUS:
        raise SemiringMismatchError("max_cycle_mean expects a max-plus matrix; use min_cycle_mean")
    return CycleMean(karp_cycle_mean(B.entries), Semiring.MAX_PLUS)


def min_cycle_mean(W: TropicalMatrix) -> CycleMean:
    """
    Minimum cycle mean of a min-plus matrix, through the negation isomorphism.

    Returns:
        CycleMean with value +∞ when no cycle exists.
    """
    _require_square(W, "min_cycle_mean")
    if W.semiring is not Semiring.MIN_PLUS:
        raise SemiringMismatchError("min_cycle_mean expects a min-plus matrix")
    return CycleMean(-karp_cycle_mean(-W.entries), Semiring.MIN_PLUS)


def star_entries(b: np.ndarray, tol: float = config.FEASIBILITY_TOL) -> np.ndarray:
    """
    Raw max-plus Kleene star by Floyd–Warshall relaxation.

    Args:
        b: Square float array.
        tol: A diagonal entry above tol means a positive cycle.

    Returns:
        The star I ⊕ b ⊕ b² ⊕ ..., with an exact zero diagonal.

    Raises:
        StarDivergesError: If a positive cycle shows up.
    """
    n = b.shape[0]
    closure = np.array(b, dtype=float, copy=True)
    for k in range(n):
        with np.errstate(invalid="ignore"):
            through_k = closure[:, k][:, None] + closure[k, :][None, :]
        np.maximum(closure, through_k, out=closure)
        if closure[k, k] > tol:
            raise StarDivergesError(
                "Kleene star does not exist",
                details=f"positive cycle through vertex {k} (weight {closure[k, k]:.3g})",
            )
    if np.any(np.diag(closure) > tol):
        raise StarDivergesError("Kleene star does not exist", details="positive cycle detected")
    np.fill_diagonal(closure, 0.0)
    return closure


def kleene_star(B: TropicalMatrix) -> TropicalMatrix:
    """
    Kleene star B* = I ⊕ B ⊕ B^⊗2 ⊕ ... of a max-plus matrix.

    Exists iff λ(B) <= 0. Cycle weights that round to within
    config.FEASIBILITY_TOL of zero count as zero.

    Raises:
        StarDivergesError: When λ(B) > 0.
    """
    _require_square(B, "kleene_star")
    if B.semiring is not Semiring.MAX_PLUS:
        raise SemiringMismatchError("kleene_star expects a max-plus matrix; use minplus_closure")
    return TropicalMatrix(star_entries(B.entries), Semiring.MAX_PLUS)


def row_mean(B: TropicalMatrix) -> np.ndarray:
    """
    Classical arithmetic mean across each row, i.e. the average of the columns.

    Applied to F_P* this is the average of the generators of the domain's
    closure, which lies in its relative interior.

    Args:
        B: Matrix with finite entries.

    Returns:
        Vector of length B.rows.

    Raises:
        PatternError: If an entry is infinite.
    """
    if not np.all(np.isfinite(B.entries)):
        raise PatternError("row_mean needs finite entries", details="matrix contains infinite entries")
    return B.entries.mean(axis=1)


def minplus_closure(W: TropicalMatrix) -> TropicalMatrix:
    """
    All-pairs shortest paths: the min-plus Kleene star with zero diagonal.

    Args:
        W: Square min-plus weight matrix (+∞ = no edge).

    Raises:
        NegativeCycleError: If W has a negative cycle.
    """
    _require_square(W, "minplus_closure")
    if W.semiring is not Semiring.MIN_PLUS:
        raise SemiringMismatchError("minplus_closure expects a min-plus matrix")
    try:
        star = kleene_star(negate_iso(W))
    except StarDivergesError as e:
        raise NegativeCycleError("negative cycle detected", details=e.details) from e
    return negate_iso(star)
