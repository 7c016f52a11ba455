"""
Models package initialization.
"""
from enum import Enum

import numpy as np


# Enums
class Semiring(Enum):
    """
    Semiring tag of a tropical matrix.
    """
    MAX_PLUS = "max-plus"
    MIN_PLUS = "min-plus"

    @property
    def zero(self) -> float:
        """Neutral element of ⊕, absorbing for ⊗."""
        return -np.inf if self is Semiring.MAX_PLUS else np.inf

    @property
    def forbidden(self) -> float:
        """The infinity that may not appear in this semiring."""
        return np.inf if self is Semiring.MAX_PLUS else -np.inf

    @property
    def reduce(self):
        """numpy reduction implementing ⊕."""
        return np.max if self is Semiring.MAX_PLUS else np.min

    @property
    def combine(self):
        """numpy elementwise function implementing ⊕."""
        return np.maximum if self is Semiring.MAX_PLUS else np.minimum

    def flipped(self) -> "Semiring":
        """Semiring reached through the negation isomorphism."""
        return Semiring.MIN_PLUS if self is Semiring.MAX_PLUS else Semiring.MAX_PLUS


class Norm(Enum):
    """
    Residual norm of a regression problem.
    """
    INF = "inf"
    TWO = "two"

    @property
    def order(self) -> float:
        return np.inf if self is Norm.INF else 2.0


class SolveStatus(Enum):
    """
    Termination status of a solver.
    """
    OPTIMAL = "optimal"
    LOCAL = "local"
    STALLED = "stalled"
    ITERATION_CAP = "iteration-cap"


# Import all models
from models.tropical_matrix import TropicalMatrix, CycleMean, as_vector
from models.pattern import Pattern, PatternGeometry, ProjectionResult
from models.regression import (
    RegressionProblem, RegressionSolution, NewtonConfig, IrslsConfig, DescentConfig
)
from models.factorization import FactorizationConfig, FactorizationResult, AssignmentMatrix
from models.applications import (
    TimeSeries, SysIdResult, TropicalPolynomial, SetCoverInstance, CensusReport
)
from models.run_config import RunConfig

__all__ = [
    'Semiring', 'Norm', 'SolveStatus',
    'TropicalMatrix', 'CycleMean', 'as_vector',
    'Pattern', 'PatternGeometry', 'ProjectionResult',
    'RegressionProblem', 'RegressionSolution', 'NewtonConfig', 'IrslsConfig', 'DescentConfig',
    'FactorizationConfig', 'FactorizationResult', 'AssignmentMatrix',
    'TimeSeries', 'SysIdResult', 'TropicalPolynomial', 'SetCoverInstance', 'CensusReport',
    'RunConfig',
]
