"""
Semiring arithmetic on dense tropical matrices.

Matrices are TropicalMatrix values; the right operand of tmul may also be a
plain 1-D vector, in which case a 1-D vector comes back. Solvers call the raw
array kernels (mp_matvec, maxplus_entries) directly.
"""
from typing import Union

import numpy as np

from models import Semiring
from models.tropical_matrix import TropicalMatrix
from utils.error_handlers import DimensionError, NaNProducedError, SemiringMismatchError

Operand = Union[TropicalMatrix, np.ndarray]


def _check_nan(values: np.ndarray, operation: str) -> np.ndarray:
    if np.isnan(values).any():
        raise NaNProducedError(f"{operation} produced NaN")
    return values


def _same_semiring(A: TropicalMatrix, B: TropicalMatrix) -> Semiring:
    if A.semiring is not B.semiring:
        raise SemiringMismatchError(
            f"cannot combine {A.semiring.value} and {B.semiring.value} matrices"
        )
    return A.semiring


def maxplus_entries(A) -> np.ndarray:
    """
    Entry array of a max-plus operand.

    Args:
        A: TropicalMatrix tagged max-plus, or an array-like of floats.

    Returns:
        2-D float array (read-only when A is a TropicalMatrix).
    """
    if isinstance(A, TropicalMatrix):
        if A.semiring is not Semiring.MAX_PLUS:
            raise SemiringMismatchError("expected a max-plus matrix")
        return A.entries
    return TropicalMatrix.maxplus(A).entries


def product(a: np.ndarray, b: np.ndarray, semiring: Semiring) -> np.ndarray:
    """Raw tropical product of 2-D arrays."""
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    with np.errstate(invalid="ignore"):
        sums = a[:, :, None] + b[None, :, :]
    return _check_nan(semiring.reduce(sums, axis=1), "tmul")


def mp_matvec(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(A ⊗ x)_i = max_k (a_ik + x_k) on raw arrays."""
    if a.shape[1] != x.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by vector of length {x.shape[0]}")
    with np.errstate(invalid="ignore"):
        return _check_nan(np.max(a + x[None, :], axis=1), "A ⊗ x")


def identity(d: int, semiring: Semiring = Semiring.MAX_PLUS) -> TropicalMatrix:
    """Tropical identity: 0 on the diagonal, the semiring zero elsewhere."""
    entries = np.full((d, d), semiring.zero)
    np.fill_diagonal(entries, 0.0)
    return TropicalMatrix(entries, semiring)


def tmul(A: TropicalMatrix, B: Operand) -> Operand:
    """
    Tropical product A ⊗ B (⊠ for min-plus).

    Args:
        A: Left matrix.
        B: Right matrix, or a 1-D vector over A's semiring.

    Returns:
        TropicalMatrix, or a 1-D array when B is a vector.
    """
    if isinstance(B, TropicalMatrix):
        semiring = _same_semiring(A, B)
        return TropicalMatrix(product(A.entries, B.entries, semiring), semiring)
    x = np.asarray(B, dtype=float)
    if x.ndim == 1:
        return product(A.entries, x.reshape(-1, 1), A.semiring).reshape(-1)
    return TropicalMatrix(product(A.entries, x, A.semiring), A.semiring)


def tadd(A: TropicalMatrix, B: TropicalMatrix) -> TropicalMatrix:
    """Entrywise A ⊕ B."""
    semiring = _same_semiring(A, B)
    if A.shape != B.shape:
        raise DimensionError(f"cannot add {A.shape} and {B.shape}")
    return TropicalMatrix(semiring.combine(A.entries, B.entries), semiring)


def tscale(A: TropicalMatrix, alpha: float) -> TropicalMatrix:
    """α ⊗ A: α added to every finite entry."""
    if not np.isfinite(alpha):
        raise DimensionError("scaling factor must be finite")
    return TropicalMatrix(A.entries + alpha, A.semiring)


def tpow(A: TropicalMatrix, k: int) -> TropicalMatrix:
    """A^⊗k by repeated squaring, k >= 1."""
    if not A.is_square:
        raise DimensionError(f"tpow needs a square matrix, got {A.shape}")
    if k < 1:
        raise DimensionError(f"tpow needs k >= 1, got {k}")
    result = None
    base = A
    while k:
        if k & 1:
            result = base if result is None else tmul(result, base)
        k >>= 1
        if k:
            base = tmul(base, base)
    return result


def negate_iso(A: Operand) -> Operand:
    """
    Negation isomorphism h(x) = −x between max-plus and min-plus.

    Vectors are negated entrywise; matrices also get the opposite semiring tag.
    """
    if isinstance(A, TropicalMatrix):
        return TropicalMatrix(-A.entries, A.semiring.flipped())
    return -np.asarray(A, dtype=float)


def vstack(*blocks: TropicalMatrix) -> TropicalMatrix:
    """Stack matrices of one semiring on top of each other."""
    semiring = blocks[0].semiring
    for block in blocks[1:]:
        _same_semiring(blocks[0], block)
        if block.cols != blocks[0].cols:
            raise DimensionError("stacked blocks need the same number of columns")
    return TropicalMatrix(np.vstack([b.entries for b in blocks]), semiring)
