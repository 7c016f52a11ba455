"""
Feasible-pattern census and the face-count bound it is compared with.
"""
import logging
from collections import Counter
from math import comb
from typing import Dict, Optional, Set

import numpy as np

import config
from algebra.semiring import maxplus_entries
from geometry.enumeration import iter_feasible_patterns
from geometry.patterns import compute_pattern, equivalence_classes
from models.applications import CensusReport
from models.pattern import Pattern
from utils.error_handlers import PatternError
from utils.validators import raise_on_errors, validate_integer

logger = logging.getLogger(__name__)


def count_bound(n: int, d: int, k: int) -> int:
    """
    (n+d−k−1)! / ((n−k)! (d−k)! (k−1)!), the number of feasible patterns with
    full support and k classes for A in general position; 0 outside
    1 <= k <= min(n, d). Patterns leaving a column uncovered are unbounded
    cells and are not counted.
    """
    if not 1 <= k <= min(n, d):
        return 0
    return comb(n + d - k - 1, k - 1) * comb(n + d - 2 * k, n - k)


def pattern_census(A, size_cap: Optional[int] = config.EXHAUSTIVE_SIZE_CAP,
                   keep_patterns: bool = True) -> CensusReport:
    """
    Enumerate the feasible patterns of A and bucket them by class count.

    Args:
        A: n×d max-plus matrix.
        size_cap: Refuse n + d above this.
        keep_patterns: Whether the report lists the patterns.

    Returns:
        CensusReport next to count_bound for every k.
    """
    a = maxplus_entries(A)
    n, d = a.shape
    counts: Counter = Counter()
    bounded: Counter = Counter()
    patterns = []
    for pattern, _ in iter_feasible_patterns(a, size_cap=size_cap):
        classes, _, _ = equivalence_classes(pattern)
        counts[len(classes)] += 1
        if len(pattern.support) == d:
            bounded[len(classes)] += 1
        if keep_patterns:
            patterns.append(pattern)
    bound: Dict[int, int] = {k: count_bound(n, d, k) for k in range(1, d + 1)}
    total = sum(counts.values())
    logger.info(f"pattern_census: {total} feasible patterns for a {n}x{d} matrix")
    return CensusReport(total=total, by_class_count=dict(counts), bound=bound,
                        bounded_by_class_count=dict(bounded), patterns=patterns)


def sampled_census(A, samples: int = 10000, seed: int = 0, scale: float = 3.0) -> Set[Pattern]:
    """
    Distinct patterns of support met at random points x ~ N(0, scale² I).

    Every sampled pattern is feasible, so the result is a subset of the
    enumerated census.
    """
    raise_on_errors([validate_integer(samples, "samples", 1)])
    a = maxplus_entries(A)
    rng = np.random.default_rng(seed)
    found: Set[Pattern] = set()
    for x in scale * rng.standard_normal((samples, a.shape[1])):
        try:
            found.add(compute_pattern(a, x))
        except PatternError:
            continue
    return found
