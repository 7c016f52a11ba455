"""
Data types of the application pipelines and the oracle suite.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from models.pattern import Pattern
from models.tropical_matrix import TropicalMatrix
from utils.error_handlers import DimensionError, ValidationError
from utils.validators import require_finite


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """
    Observed orbit x(0), ..., x(N) stored as a d×(N+1) matrix, columns in time order.
    """
    X: np.ndarray

    def __post_init__(self):
        X = np.array(self.X, dtype=float, copy=True)
        if X.ndim != 2:
            raise DimensionError(f"time series must be 2-D, got shape {X.shape}")
        if X.shape[1] < 2:
            raise ValidationError("time series needs at least two observations (N >= 1)", field="X")
        require_finite(X, "X")
        X.setflags(write=False)
        object.__setattr__(self, "X", X)

    @classmethod
    def from_rows(cls, rows: np.ndarray) -> "TimeSeries":
        """Build from an (N+1)×d array with one observation per row."""
        return cls(np.asarray(rows, dtype=float).T)

    @property
    def d(self) -> int:
        return self.X.shape[0]

    @property
    def steps(self) -> int:
        """N, the number of transitions."""
        return self.X.shape[1] - 1

    @property
    def past(self) -> np.ndarray:
        """X(:, 0:N)."""
        return self.X[:, :-1]

    @property
    def future(self) -> np.ndarray:
        """X(:, 1:N+1)."""
        return self.X[:, 1:]


@dataclass
class SysIdResult:
    """
    Fitted system matrix with its fit diagnostics.
    """
    A_hat: TropicalMatrix
    frob_residual_sq: float
    evidence: np.ndarray
    row_residuals_sq: np.ndarray
    loglik: Optional[float] = None
    lam: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "A_hat": self.A_hat.entries.tolist(),
            "frob_residual_sq": float(self.frob_residual_sq),
            "evidence": self.evidence.astype(int).tolist(),
            "row_residuals_sq": self.row_residuals_sq.tolist(),
            "loglik": None if self.loglik is None else float(self.loglik),
            "lambda": float(self.lam),
        }


@dataclass(frozen=True, eq=False)
class TropicalPolynomial:
    """
    Max-plus polynomial p(x) = max_n (a_n + S(n,:)·x).
    """
    S: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        S = np.array(self.S, dtype=float, copy=True)
        if S.ndim == 1:
            S = S.reshape(-1, 1)
        a = np.array(self.a, dtype=float, copy=True).reshape(-1)
        if S.shape[0] < 1:
            raise ValidationError("a polynomial needs at least one monomial", field="S")
        if a.shape[0] != S.shape[0]:
            raise DimensionError(f"{a.shape[0]} coefficients for {S.shape[0]} monomials")
        S.setflags(write=False)
        a.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "a", a)

    @property
    def k(self) -> int:
        return self.S.shape[0]

    @property
    def variables(self) -> int:
        return self.S.shape[1]


@dataclass(frozen=True)
class SetCoverInstance:
    """
    Family of m subsets of {0, ..., n−1} and a target cover size k.
    """
    family: Tuple[FrozenSet[int], ...]
    n: int
    k: int

    def __post_init__(self):
        family = tuple(frozenset(int(e) for e in s) for s in self.family)
        object.__setattr__(self, "family", family)
        universe = frozenset(range(self.n))
        if self.n < 1:
            raise ValidationError("the ground set must be non-empty", field="n")
        if not family:
            raise ValidationError("the family must be non-empty", field="family")
        if any(not s <= universe for s in family):
            raise ValidationError("family members must be subsets of 0..n-1", field="family")
        if frozenset().union(*family) != universe:
            raise ValidationError("the family must cover the ground set", field="family")
        if not 1 <= self.k < self.m:
            raise ValidationError(f"k must satisfy 1 <= k < m = {self.m}, got {self.k}", field="k")

    @property
    def m(self) -> int:
        return len(self.family)


@dataclass
class CensusReport:
    """
    Feasible-pattern counts bucketed by the number of equivalence classes,
    next to the face-count bound for comparison.

    by_class_count covers every feasible pattern. bounded_by_class_count keeps
    the patterns whose support is all of {1,...,d}; those are the bounded cells
    the bound counts.
    """
    total: int
    by_class_count: Dict[int, int]
    bound: Dict[int, int]
    bounded_by_class_count: Dict[int, int] = field(default_factory=dict)
    patterns: List[Pattern] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "total": self.total,
            "by_class_count": {str(k): v for k, v in sorted(self.by_class_count.items())},
            "bounded_by_class_count": {str(k): v for k, v in sorted(self.bounded_by_class_count.items())},
            "bound": {str(k): v for k, v in sorted(self.bound.items())},
            "patterns": [p.as_lists(one_based=True) for p in self.patterns],
        }
