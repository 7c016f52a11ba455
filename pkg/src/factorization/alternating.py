"""
Two-factor min-plus factorization C ≈ A ⊠ B by alternating regressions.

Under the negation isomorphism a row update min ‖x ⊠ B − C(i,:)‖₂ becomes
the max-plus regression (−Bᵀ) ⊗ (−x) ≈ −C(i,:), and a column update
min ‖A ⊠ x − C(:,j)‖₂ becomes (−A) ⊗ (−x) ≈ −C(:,j). Both are handed to the
multistart Newton solver; an update is kept only if it does not increase
its own residual, so sweeps are monotone.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from factorization.normalization import factor_residual, normalize_factors
from models import Norm, Semiring
from models.factorization import FactorizationConfig, FactorizationResult
from models.regression import NewtonConfig, RegressionProblem
from models.tropical_matrix import TropicalMatrix
from regression.newton import multistart_newton
from utils.error_handlers import RankError, SemiringMismatchError
from utils.performance import parallel_map
from utils.validators import require_finite

logger = logging.getLogger(__name__)


def _minplus_array(C) -> np.ndarray:
    if isinstance(C, TropicalMatrix):
        if C.semiring is not Semiring.MIN_PLUS:
            raise SemiringMismatchError("factorization expects a min-plus matrix")
        return C.entries
    return TropicalMatrix.minplus(C).entries


def check_rank(d: int, limit: int) -> None:
    if not 0 < d <= limit:
        raise RankError(f"rank must satisfy 0 < d <= {limit}, got {d}")


def fit_minplus_vector(M: np.ndarray, target: np.ndarray, current: Optional[np.ndarray],
                       newton: NewtonConfig) -> np.ndarray:
    """
    argmin_x ‖M ⊠ x − target‖₂ through the negation isomorphism.

    When current is given it warm-starts the solver and is kept unless the
    new vector fits at least as well.
    """
    problem = RegressionProblem(TropicalMatrix.maxplus(-M), -target, Norm.TWO)
    warm = None if current is None else -current
    solution = multistart_newton(problem, newton, warm)
    candidate = -solution.x
    if current is None:
        return candidate
    new_fit = np.sum((_apply(M, candidate) - target) ** 2)
    old_fit = np.sum((_apply(M, current) - target) ** 2)
    return candidate if new_fit <= old_fit else current


def _apply(M: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.min(M + x[None, :], axis=1)


def _sweep_rows(C: np.ndarray, a: np.ndarray, b: np.ndarray, newton: NewtonConfig,
                threads: Optional[int]) -> np.ndarray:
    # row i of A ⊠ B is (Bᵀ ⊠ A(i,:)ᵀ)ᵀ
    rows = parallel_map(lambda i: fit_minplus_vector(b.T, C[i], a[i], newton), range(C.shape[0]), threads)
    return np.array(rows)


def _sweep_columns(C: np.ndarray, a: np.ndarray, b: Optional[np.ndarray], newton: NewtonConfig,
                   threads: Optional[int]) -> np.ndarray:
    columns = parallel_map(
        lambda j: fit_minplus_vector(a, C[:, j], None if b is None else b[:, j], newton),
        range(C.shape[1]),
        threads,
    )
    return np.array(columns).T


def _single_run(C: np.ndarray, d: int, config: FactorizationConfig, seed: np.random.SeedSequence,
                initial: Optional[Tuple[np.ndarray, np.ndarray]]
                ) -> Tuple[np.ndarray, np.ndarray, List[float]]:
    rng = np.random.default_rng(seed)
    newton = NewtonConfig(starts=config.inner_starts, seed=int(rng.integers(2**31)), threads=1)
    if initial is not None:
        a, b = (np.array(m, dtype=float) for m in initial)
    else:
        a = C[:, rng.choice(C.shape[1], size=d, replace=False)].copy()
        b = _sweep_columns(C, a, None, newton, config.threads)

    history = [factor_residual(C, a, b)]
    for sweep in range(config.max_sweeps):
        a = _sweep_rows(C, a, b, newton, config.threads)
        b = _sweep_columns(C, a, b, newton, config.threads)
        history.append(factor_residual(C, a, b))
        logger.debug(f"alternating sweep {sweep + 1}: residual_sq={history[-1]:.6g}")
        if history[-2] - history[-1] < config.tol * max(1.0, history[-2]):
            break
    return a, b, history


def alternating_factorize(C, d: int, config: Optional[FactorizationConfig] = None,
                          initial: Optional[Tuple[np.ndarray, np.ndarray]] = None
                          ) -> FactorizationResult:
    """
    Approximate C ≈ A ⊠ B with A n×d and B d×m in the min-plus semiring.

    Initialization takes d distinct random columns of C as A and solves one
    sweep of column regressions for B. Sweeps stop when the residual
    improves by less than tol (relative) or after max_sweeps. With several
    restarts the best run wins. Factors come back normalized.

    Args:
        C: Finite n×m min-plus matrix.
        d: Rank, 0 < d <= min(n, m).
        config: Factorization settings.
        initial: Optional starting pair (A, B), used by the first restart.

    Returns:
        FactorizationResult with both factors.
    """
    config = config or FactorizationConfig()
    c = _minplus_array(C)
    require_finite(c, "C")
    check_rank(d, min(c.shape))

    streams = np.random.SeedSequence(config.seed).spawn(config.restarts)
    best = None
    for restart, stream in enumerate(streams):
        a, b, history = _single_run(c, d, config, stream, initial if restart == 0 else None)
        logger.info(f"alternating_factorize restart {restart}: residual_sq={history[-1]:.6g}")
        if best is None or history[-1] < best[2][-1]:
            best = (a, b, history, restart)

    a, b, history, restart = best
    A, B = normalize_factors(TropicalMatrix.minplus(a), TropicalMatrix.minplus(b))
    return FactorizationResult(
        A=A,
        B=B,
        residual_sq=factor_residual(c, A.entries, B.entries),
        sweeps=len(history) - 1,
        normalized=True,
        history=history,
        notes=[f"best of {config.restarts} restarts: restart {restart}"],
    )
