"""
Dense tropical matrices.
"""
from dataclasses import dataclass, field
from typing import Iterable, Tuple, Union

import numpy as np

from models import Semiring
from utils.error_handlers import DimensionError, NaNProducedError, ValidationError

ArrayLike = Union[np.ndarray, Iterable]


def _readonly(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=float, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class TropicalMatrix:
    """
    Dense matrix over the max-plus or min-plus semiring.

    Entries are IEEE doubles; the semiring's neutral element (−∞ for max-plus,
    +∞ for min-plus) marks missing edges. The opposite infinity and NaN are
    rejected. The entry array is read-only.
    """
    entries: np.ndarray
    semiring: Semiring = Semiring.MAX_PLUS

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim == 1:
            entries = entries.reshape(1, -1)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise DimensionError(f"Tropical matrix must be 2-D and non-empty, got shape {entries.shape}")
        if np.isnan(entries).any():
            raise NaNProducedError("Tropical matrix contains NaN")
        if (entries == self.semiring.forbidden).any():
            raise ValidationError(
                f"{self.semiring.value} matrix contains {self.semiring.forbidden}",
                field="entries",
            )
        object.__setattr__(self, "entries", _readonly(entries))

    @classmethod
    def maxplus(cls, entries: ArrayLike) -> "TropicalMatrix":
        return cls(np.asarray(entries, dtype=float), Semiring.MAX_PLUS)

    @classmethod
    def minplus(cls, entries: ArrayLike) -> "TropicalMatrix":
        return cls(np.asarray(entries, dtype=float), Semiring.MIN_PLUS)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def finite_mask(self) -> np.ndarray:
        return np.isfinite(self.entries)

    def transpose(self) -> "TropicalMatrix":
        return TropicalMatrix(self.entries.T, self.semiring)

    @property
    def T(self) -> "TropicalMatrix":
        return self.transpose()

    def with_entries(self, entries: ArrayLike) -> "TropicalMatrix":
        """Same semiring, new entries."""
        return TropicalMatrix(np.asarray(entries, dtype=float), self.semiring)

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return np.array(self.entries, copy=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropicalMatrix):
            return NotImplemented
        return self.semiring is other.semiring and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.semiring, self.entries.shape, self.entries.tobytes()))

    def __repr__(self) -> str:
        return f"TropicalMatrix({self.semiring.value}, shape={self.shape})"


@dataclass(frozen=True)
class CycleMean:
    """
    Maximum (or, for min-plus, minimum) cycle mean of a square matrix; ∓∞ when acyclic.
    """
    value: float
    semiring: Semiring = Semiring.MAX_PLUS
    cycle: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def has_cycle(self) -> bool:
        return bool(np.isfinite(self.value))

    def __float__(self) -> float:
        return float(self.value)


def as_vector(x: ArrayLike, name: str = "x") -> np.ndarray:
    """
    Convert to a 1-D float vector, rejecting NaN.

    Args:
        x: Values.
        name: Name used in error messages.

    Returns:
        A new float array.
    """
    vector = np.array(x, dtype=float, copy=True).reshape(-1)
    if np.isnan(vector).any():
        raise NaNProducedError(f"{name} contains NaN")
    return vector
