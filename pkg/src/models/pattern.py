"""
Patterns of support and their derived geometry.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from models.tropical_matrix import TropicalMatrix
from utils.error_handlers import PatternError


@dataclass(frozen=True)
class Pattern:
    """
    Per-row argmax sets P = (P_1, ..., P_n) of x ↦ A ⊗ x, 0-based column indices.
    """
    sets: Tuple[FrozenSet[int], ...]
    d: int

    def __post_init__(self):
        sets = tuple(frozenset(int(j) for j in s) for s in self.sets)
        if not sets:
            raise PatternError("Pattern needs at least one row")
        for i, s in enumerate(sets):
            if not s:
                raise PatternError(f"Pattern row {i} is empty")
            if min(s) < 0 or max(s) >= self.d:
                raise PatternError(f"Pattern row {i} has an index outside 0..{self.d - 1}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def from_lists(cls, sets: Iterable[Iterable[int]], d: int, one_based: bool = False) -> "Pattern":
        """
        Build a pattern from nested index lists.

        Args:
            sets: One iterable of column indices per row.
            d: Number of columns.
            one_based: Whether indices start at 1.
        """
        shift = 1 if one_based else 0
        return cls(tuple(frozenset(j - shift for j in s) for s in sets), d)

    @classmethod
    def singleton(cls, ell: Sequence[int], d: int) -> "Pattern":
        """Pattern with P_i = {ell[i]}."""
        return cls(tuple(frozenset([int(j)]) for j in ell), d)

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset().union(*self.sets)

    def support_mask(self) -> np.ndarray:
        mask = np.zeros(self.d, dtype=bool)
        mask[list(self.support)] = True
        return mask

    def membership(self) -> np.ndarray:
        """Boolean n×d matrix with [i, j] true iff j ∈ P_i."""
        mask = np.zeros((self.n, self.d), dtype=bool)
        for i, s in enumerate(self.sets):
            mask[i, list(s)] = True
        return mask

    def subpattern(self) -> np.ndarray:
        """ℓ(i) = min(P_i)."""
        return np.array([min(s) for s in self.sets], dtype=int)

    def is_singleton(self) -> bool:
        return all(len(s) == 1 for s in self.sets)

    def precedes(self, other: "Pattern") -> bool:
        """P ⪯ Q iff P_i ⊆ Q_i for every row."""
        if self.n != other.n or self.d != other.d:
            raise PatternError("Patterns of different shapes are not comparable")
        return all(p <= q for p, q in zip(self.sets, other.sets))

    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        """Lexicographic order key."""
        return tuple(tuple(sorted(s)) for s in self.sets)

    def as_lists(self, one_based: bool = False) -> List[List[int]]:
        shift = 1 if one_based else 0
        return [sorted(j + shift for j in s) for s in self.sets]

    def __str__(self) -> str:
        return "(" + ", ".join("{" + ",".join(str(j + 1) for j in sorted(s)) + "}" for s in self.sets) + ")"


@dataclass(frozen=True, eq=False)
class PatternGeometry:
    """
    Objects derived from a pattern: feasibility matrix, classes of the
    transitive closure of "shares a row", class map and subpattern.
    """
    pattern: Pattern
    F: TropicalMatrix
    classes: Tuple[Tuple[int, ...], ...]
    class_of: np.ndarray
    ell: np.ndarray
    lam: float = field(default=float("nan"))

    @property
    def support(self) -> FrozenSet[int]:
        return self.pattern.support

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def row_classes(self) -> np.ndarray:
        """ĉ(i) = c(ℓ(i)), the class each row maps to."""
        return self.class_of[self.ell]


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """
    Normal projection Φ of y for a pattern and its closest local minimum Ψ.

    psi holds −∞ (or the caller's values) off the pattern's support; the
    support mask tells which entries are determined by the projection.
    """
    phi: np.ndarray
    psi: np.ndarray
    admissible: bool
    residual_sq: float
    support: np.ndarray
