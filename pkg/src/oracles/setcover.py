"""
Set-cover reduction: deciding whether 0 has a descent direction for a 2-norm
regression over {0, −∞} matrices is at least as hard as set cover.
"""
import itertools
import logging
from math import comb
from typing import Tuple

import numpy as np

import config
from models.applications import SetCoverInstance
from models.tropical_matrix import TropicalMatrix, as_vector
from utils.error_handlers import CapExceededError, DimensionError, ValidationError

logger = logging.getLogger(__name__)

ZERO_SUM_TOL = 1e-9
CHUNK_BITS = 14


def reduction_parameters(instance: SetCoverInstance) -> Tuple[float, float, float]:
    """
    (a, b, c) of the reduction.

    With a = −(m − k − 3/2)/2 a cover J of size p gives
    ⟨A ⊗ 1_J, y⟩ = (m − p)(p − k − 1/2)/2, negative exactly when p <= k < m;
    c = −(|a| + |b|)m² makes any uncovered element outweigh the rest.
    """
    m, k = instance.m, instance.k
    a = -(m - k - 1.5) / 2.0
    b = 1.0
    c = -(abs(a) + abs(b)) * m ** 2
    return a, b, c


def setcover_reduction(instance: SetCoverInstance) -> Tuple[TropicalMatrix, np.ndarray]:
    """
    Regression instance whose zero point has a descent direction iff the
    family has a cover of size <= k.

    Rows, in order: one per element (zeros at the sets containing it, target
    c), one per set (a single zero, target a), one per pair of sets (two
    zeros, target b) and a last all-zero row whose target makes Σy = 0.

    Returns:
        (A, y) with A of shape (n + m + m(m−1)/2 + 1) × m over {0, −∞}.
    """
    n, m = instance.n, instance.m
    a, b, c = reduction_parameters(instance)
    pairs = list(itertools.combinations(range(m), 2))
    rows = n + m + len(pairs) + 1
    A = np.full((rows, m), -np.inf)
    y = np.empty(rows)

    for element in range(n):
        for j, subset in enumerate(instance.family):
            if element in subset:
                A[element, j] = 0.0
    y[:n] = c
    A[n + np.arange(m), np.arange(m)] = 0.0
    y[n:n + m] = a
    for offset, (j, other) in enumerate(pairs):
        A[n + m + offset, [j, other]] = 0.0
    y[n + m:n + m + len(pairs)] = b
    A[-1, :] = 0.0
    y[-1] = -(n * c + m * a + comb(m, 2) * b)
    logger.debug(f"setcover_reduction: n={n} m={m} k={instance.k} -> {rows}x{m} matrix")
    return TropicalMatrix.maxplus(A), y


def has_binary_descent(A, y) -> bool:
    """
    Whether some z ∈ {0,1}^m \\ {0} has ⟨A ⊗ z, y⟩ < 0.

    For a {0, −∞} matrix and a zero-sum target this decides whether 0 has a
    descent direction. (A ⊗ z)_i is 1 when row i has a zero at some j with
    z_j = 1 and 0 otherwise.

    Raises:
        ValidationError: On entries outside {0, −∞} or a non-zero sum.
        CapExceededError: If m exceeds BINARY_DESCENT_CAP.
    """
    a = A.entries if isinstance(A, TropicalMatrix) else np.asarray(A, dtype=float)
    y = as_vector(y, "y")
    if a.shape[0] != y.shape[0]:
        raise DimensionError(f"y has length {y.shape[0]} but A has {a.shape[0]} rows")
    zeros = a == 0.0
    if not np.all(zeros | np.isneginf(a)):
        raise ValidationError("A must have entries in {0, -inf}", field="A")
    if abs(float(np.sum(y))) > ZERO_SUM_TOL * max(1.0, float(np.sum(np.abs(y)))):
        raise ValidationError("y must sum to zero", field="y")
    m = a.shape[1]
    if m > config.BINARY_DESCENT_CAP:
        raise CapExceededError("too many columns for exhaustive search",
                               details=f"m = {m} exceeds {config.BINARY_DESCENT_CAP}")

    weights = zeros.astype(np.int64).T
    bits = np.arange(m)
    total = 1 << m
    for start in range(1, total, 1 << CHUNK_BITS):
        masks = np.arange(start, min(start + (1 << CHUNK_BITS), total))
        Z = ((masks[:, None] >> bits[None, :]) & 1).astype(np.int64)
        image = (Z @ weights > 0).astype(float)
        if np.any(image @ y < -ZERO_SUM_TOL):
            return True
    return False


def has_cover(instance: SetCoverInstance) -> bool:
    """Whether at most k members of the family cover {0, ..., n−1}."""
    universe = frozenset(range(instance.n))
    for size in range(1, instance.k + 1):
        for chosen in itertools.combinations(instance.family, size):
            if frozenset().union(*chosen) == universe:
                return True
    return False


def iter_instances(n: int, m: int):
    """
    Every covering family of m non-empty subsets of {0, ..., n−1}, up to
    reordering (repeated members allowed), paired with every valid k.
    """
    subsets = [
        frozenset(combo)
        for size in range(1, n + 1)
        for combo in itertools.combinations(range(n), size)
    ]
    universe = frozenset(range(n))
    for family in itertools.combinations_with_replacement(subsets, m):
        if frozenset().union(*family) != universe:
            continue
        for k in range(1, m):
            yield SetCoverInstance(family, n, k)


def verify_reduction(max_n: int, max_m: int) -> Tuple[int, list]:
    """
    Compare has_binary_descent on the reduction with has_cover on every
    instance with n <= max_n and 2 <= m <= max_m.

    Returns:
        (instances checked, mismatching instances).
    """
    checked = 0
    mismatches = []
    for n in range(1, max_n + 1):
        for m in range(2, max_m + 1):
            for instance in iter_instances(n, m):
                A, y = setcover_reduction(instance)
                if has_binary_descent(A, y) != has_cover(instance):
                    mismatches.append(instance)
                checked += 1
    logger.info(f"verify_reduction: {checked} instances, {len(mismatches)} mismatches")
    return checked, mismatches
