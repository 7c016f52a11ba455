"""
Gauge fixing and residuals of min-plus factorizations.

A ⊠ B is unchanged when column k of A is shifted by −s_k and row k of B by
+s_k, or when the columns of A and the rows of B are permuted together.
"""
from typing import Optional, Tuple

import numpy as np

from algebra.semiring import product
from models import Semiring
from models.tropical_matrix import TropicalMatrix


def minplus_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Raw min-plus product a ⊠ b."""
    return product(a, b, Semiring.MIN_PLUS)


def factor_residual(C: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """‖C − A ⊠ B‖²_F."""
    return float(np.sum((C - minplus_product(a, b)) ** 2))


def symmetric_residual(C: np.ndarray, a: np.ndarray, include_diagonal: bool = True) -> float:
    """
    ‖C − A ⊠ Aᵀ‖²_F, or its off-diagonal part when include_diagonal is false.
    """
    diff = (C - minplus_product(a, a.T)) ** 2
    if not include_diagonal:
        np.fill_diagonal(diff, 0.0)
    return float(np.sum(diff))


def column_order(a: np.ndarray) -> np.ndarray:
    """
    Column permutation making the last row non-increasing.

    Ties are broken by the rows above, bottom to top, also non-increasing.
    """
    # lexsort takes its primary key last
    return np.lexsort(tuple(-a[i] for i in range(a.shape[0])))


def normalize_factors(A: TropicalMatrix, B: Optional[TropicalMatrix] = None
                      ) -> Tuple[TropicalMatrix, Optional[TropicalMatrix]]:
    """
    Fix one representative of a factor pair's gauge class.

    With B: every column of A gets minimum exactly 0 (B compensates), then
    columns are ordered so the last row of A is non-increasing. Without B
    (symmetric factor) only the column order is fixed, since A ⊠ Aᵀ is not
    invariant under column shifts.

    Returns:
        (A, B) normalized; the product A ⊠ B is unchanged.
    """
    a = A.to_array()
    b = None if B is None else B.to_array()
    if b is not None:
        shifts = a.min(axis=0)
        a = a - shifts[None, :]
        b = b + shifts[:, None]
    order = column_order(a)
    a = a[:, order]
    if b is not None:
        b = b[order, :]
    return (
        TropicalMatrix.minplus(a),
        None if b is None else TropicalMatrix.minplus(b),
    )
