"""
Regression problems, solutions and solver configurations.
"""
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

import config
from models import Norm, Semiring, SolveStatus
from models.tropical_matrix import TropicalMatrix, as_vector
from utils.error_handlers import DimensionError, SemiringMismatchError, ValidationError
from utils.validators import (
    raise_on_errors, require_finite, validate_integer, validate_number
)


@dataclass(frozen=True, eq=False)
class RegressionProblem:
    """
    Tropical regression problem min_x ‖A ⊗ x − y‖_p over the max-plus semiring.
    """
    A: TropicalMatrix
    y: np.ndarray
    norm: Norm = Norm.TWO

    def __post_init__(self):
        A = self.A if isinstance(self.A, TropicalMatrix) else TropicalMatrix.maxplus(self.A)
        if A.semiring is not Semiring.MAX_PLUS:
            raise SemiringMismatchError("Regression is posed over the max-plus semiring")
        y = as_vector(self.y, "y")
        if y.shape[0] != A.rows:
            raise DimensionError(f"y has length {y.shape[0]} but A has {A.rows} rows")
        require_finite(y, "y")
        if not A.finite_mask().any(axis=1).all():
            raise ValidationError("every row of A needs a finite entry", field="A")
        y.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "norm", Norm(self.norm))

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def d(self) -> int:
        return self.A.cols

    def with_norm(self, norm: Norm) -> "RegressionProblem":
        return RegressionProblem(self.A, self.y, norm)


@dataclass
class RegressionSolution:
    """
    Result of a regression solver.

    residual is the p-norm of A ⊗ x − y; objective carries a penalized value
    when the solver minimizes one.
    """
    x: np.ndarray
    residual: float
    iterations: int
    status: SolveStatus
    trace: List[Tuple[np.ndarray, float]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    objective: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        document = {
            "x": self.x.tolist(),
            "residual": float(self.residual),
            "iterations": int(self.iterations),
            "status": self.status.value,
        }
        if self.objective is not None:
            document["objective"] = float(self.objective)
        if self.notes:
            document["notes"] = list(self.notes)
        return document


@dataclass(frozen=True)
class NewtonConfig:
    """
    Settings of Newton's method with undershooting and of its multistart driver.

    The multistart driver runs each start with mu, then refines with refine_mu;
    both runs use the same stall window.
    """
    mu: float = config.NEWTON_MU
    stall_window: int = config.STALL_WINDOW
    max_iter: int = config.MAX_ITER
    starts: int = config.MULTISTART_STARTS
    seed: int = config.DEFAULT_SEED
    tol: float = config.TOL
    refine_mu: float = config.REFINE_MU
    threads: Optional[int] = None
    record_trace: bool = False

    def __post_init__(self):
        raise_on_errors([
            validate_number(self.mu, "mu", 0.0, 1.0, min_inclusive=False),
            validate_number(self.refine_mu, "refine_mu", 0.0, 1.0, min_inclusive=False),
            validate_integer(self.stall_window, "stall_window", 1),
            validate_integer(self.max_iter, "max_iter", 1),
            validate_integer(self.starts, "starts", 1),
            validate_integer(self.seed, "seed", 0),
            validate_number(self.tol, "tol", 0.0),
        ])
        if self.threads is not None:
            raise_on_errors([validate_integer(self.threads, "threads", 1)])

    def with_mu(self, mu: float) -> "NewtonConfig":
        return replace(self, mu=mu)


@dataclass(frozen=True)
class IrslsConfig:
    """
    Settings of iteratively reshifted least squares.
    """
    newton: NewtonConfig = field(default_factory=NewtonConfig)
    max_iter: int = config.IRSLS_MAX_ITER
    tol: float = config.TOL
    divergence_factor: float = config.IRSLS_DIVERGENCE_FACTOR

    def __post_init__(self):
        raise_on_errors([
            validate_integer(self.max_iter, "max_iter", 1),
            validate_number(self.tol, "tol", 0.0),
            validate_number(self.divergence_factor, "divergence_factor", 0.0, min_inclusive=False),
        ])


@dataclass(frozen=True)
class DescentConfig:
    """
    Settings of the steepest descent path follower.
    """
    max_segments: int = config.MAX_SEGMENTS
    tol: float = 1e-9
    enumeration_cap: int = config.ENUMERATION_CAP
    tie_tol: float = config.DESCENT_TIE_TOL
    horizon: float = config.EXIT_TIME_HORIZON
    xtol: float = config.EXIT_TIME_XTOL
    record_trace: bool = True

    def __post_init__(self):
        raise_on_errors([
            validate_integer(self.max_segments, "max_segments", 1),
            validate_number(self.tol, "tol", 0.0),
            validate_integer(self.enumeration_cap, "enumeration_cap", 1),
            validate_number(self.tie_tol, "tie_tol", 0.0),
            validate_number(self.horizon, "horizon", 0.0, min_inclusive=False),
            validate_number(self.xtol, "xtol", 0.0, min_inclusive=False),
        ])
