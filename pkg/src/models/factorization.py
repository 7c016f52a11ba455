"""
Factorization results and configuration.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

import config
from models.tropical_matrix import TropicalMatrix
from utils.validators import raise_on_errors, validate_integer, validate_number


@dataclass(frozen=True)
class FactorizationConfig:
    """
    Settings shared by the alternating and symmetric factorization drivers.
    """
    seed: int = config.DEFAULT_SEED
    restarts: int = config.FACTOR_RESTARTS
    tol: float = 1e-9
    # alternating
    max_sweeps: int = config.ALTERNATING_MAX_SWEEPS
    inner_starts: int = config.INNER_STARTS
    # symmetric
    stall_window: int = config.FACTOR_STALL_WINDOW
    max_iter: int = config.FACTOR_MAX_ITER
    jacobi_steps: int = config.JACOBI_STEPS
    min_mu: float = config.FACTOR_MIN_MU
    mu_decay: float = config.FACTOR_MU_DECAY
    threads: Optional[int] = None

    def __post_init__(self):
        raise_on_errors([
            validate_integer(self.seed, "seed", 0),
            validate_integer(self.restarts, "restarts", 1),
            validate_number(self.tol, "tol", 0.0),
            validate_integer(self.max_sweeps, "max_sweeps", 1),
            validate_integer(self.inner_starts, "inner_starts", 1),
            validate_integer(self.stall_window, "stall_window", 1),
            validate_integer(self.max_iter, "max_iter", 1),
            validate_integer(self.jacobi_steps, "jacobi_steps", 1),
            validate_number(self.min_mu, "min_mu", 0.0, 1.0, min_inclusive=False),
            validate_number(self.mu_decay, "mu_decay", 0.0, 1.0, min_inclusive=False),
        ])
        if self.threads is not None:
            raise_on_errors([validate_integer(self.threads, "threads", 1)])

    def mu_at(self, k: int) -> float:
        """Undershoot factor of outer iteration k."""
        return max(self.min_mu, self.mu_decay ** k)


@dataclass
class FactorizationResult:
    """
    Min-plus factorization C ≈ A ⊠ B, or C ≈ A ⊠ Aᵀ when B is None.
    """
    A: TropicalMatrix
    B: Optional[TropicalMatrix]
    residual_sq: float
    sweeps: int
    normalized: bool
    history: List[float] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def symmetric(self) -> bool:
        return self.B is None

    def to_dict(self) -> Dict[str, Any]:
        document = {
            "A": self.A.entries.tolist(),
            "B": None if self.B is None else self.B.entries.tolist(),
            "residual_sq": float(self.residual_sq),
            "sweeps": int(self.sweeps),
            "normalized": bool(self.normalized),
        }
        if self.notes:
            document["notes"] = list(self.notes)
        return document


@dataclass(frozen=True, eq=False)
class AssignmentMatrix:
    """
    K(A)_ij = min(argmin_k (a_ik + a_jk)), 0-based column indices.
    """
    K: np.ndarray
    d: int

    def __post_init__(self):
        K = np.array(self.K, dtype=int, copy=True)
        K.setflags(write=False)
        object.__setattr__(self, "K", K)

    @property
    def n(self) -> int:
        return self.K.shape[0]

    def one_hot(self) -> np.ndarray:
        """Boolean n×n×d array with [i, j, k] true iff K_ij = k."""
        return self.K[:, :, None] == np.arange(self.d)[None, None, :]
