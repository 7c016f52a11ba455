"""
Enumeration of patterns: the depth-first pattern tree with feasibility pruning,
and the sub-patterns below a given pattern.
"""
import itertools
import logging
from typing import Iterator, List, Optional, Tuple

import numpy as np

import config
from algebra.cycles import karp_cycle_mean
from algebra.semiring import maxplus_entries
from geometry.patterns import add_row_constraints
from models.pattern import Pattern
from utils.error_handlers import CapExceededError, EnumerationCapExceeded

logger = logging.getLogger(__name__)


def _nonempty_subsets(columns: List[int]) -> List[Tuple[int, ...]]:
    subsets = [
        combo
        for size in range(1, len(columns) + 1)
        for combo in itertools.combinations(sorted(columns), size)
    ]
    return sorted(subsets)


def iter_feasible_patterns(A, tol: float = config.FEASIBILITY_TOL,
                           size_cap: Optional[int] = config.EXHAUSTIVE_SIZE_CAP
                           ) -> Iterator[Tuple[Pattern, np.ndarray]]:
    """
    Depth-first walk of the pattern tree, yielding every feasible pattern.

    Level i of the tree fixes P_i among the non-empty subsets of the finite
    columns of row i. A vertex's feasibility matrix only grows along a branch,
    so a vertex with λ(F_v) > tol prunes its whole subtree. Leaves come out in
    lexicographic order.

    Args:
        A: n×d max-plus matrix.
        tol: Feasibility tolerance on λ.
        size_cap: Refuse matrices with n + d above this (None disables).

    Yields:
        (pattern, F_P) pairs; F_P has its zero diagonal set.

    Raises:
        CapExceededError: If n + d exceeds size_cap.
    """
    a = maxplus_entries(A)
    n, d = a.shape
    if size_cap is not None and n + d > size_cap:
        raise CapExceededError(
            "pattern tree too large",
            details=f"n + d = {n + d} exceeds the cap {size_cap}",
        )
    choices = [_nonempty_subsets(np.flatnonzero(np.isfinite(a[i])).tolist()) for i in range(n)]

    root = np.full((d, d), -np.inf)
    np.fill_diagonal(root, 0.0)
    visited = 0

    def walk(level: int, F: np.ndarray, prefix: List[Tuple[int, ...]]):
        nonlocal visited
        if level == n:
            yield Pattern(tuple(frozenset(s) for s in prefix), d), F
            return
        for subset in choices[level]:
            visited += 1
            child = add_row_constraints(F.copy(), a[level], subset)
            if karp_cycle_mean(child) > tol:
                continue
            prefix.append(subset)
            yield from walk(level + 1, child, prefix)
            prefix.pop()

    yield from walk(0, root, [])
    logger.debug(f"Pattern tree: visited {visited} vertices for a {n}x{d} matrix")


def count_subpatterns(P: Pattern) -> int:
    """Number of patterns Q ⪯ P: ∏_i (2^|P_i| − 1)."""
    total = 1
    for s in P.sets:
        total *= 2 ** len(s) - 1
    return total


def iter_subpatterns(P: Pattern, cap: int = config.ENUMERATION_CAP) -> Iterator[Pattern]:
    """
    Every pattern Q ⪯ P in lexicographic order.

    Raises:
        EnumerationCapExceeded: If there are more than cap of them.
    """
    count = count_subpatterns(P)
    if count > cap:
        raise EnumerationCapExceeded(
            "too many sub-patterns to enumerate",
            details=f"{count} > {cap}",
        )
    choices = [_nonempty_subsets(sorted(s)) for s in P.sets]
    for combo in itertools.product(*choices):
        yield Pattern(tuple(frozenset(s) for s in combo), P.d)
