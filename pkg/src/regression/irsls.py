"""
Iteratively reshifted least squares for the penalized problem

    min_x ‖A ⊗ x − y‖²₂ + λ Σ_j x_j,

whose minimizers push coefficients without support in the data to −∞.
Each iteration solves the unpenalized stacked problem [A; I] ⊗ x ≈
[y; x_prev − λ/2] with Newton's method warm-started at x_prev.
"""
import logging
from typing import Optional

import numpy as np

from algebra.semiring import identity, maxplus_entries, vstack
from models import SolveStatus
from models.regression import IrslsConfig, RegressionProblem, RegressionSolution
from models.tropical_matrix import TropicalMatrix, as_vector
from regression.inf_norm import residual
from regression.newton import newton_solve
from utils.error_handlers import ValidationError
from utils.validators import require_finite

logger = logging.getLogger(__name__)


def penalized_objective(A, x, y, lam: float) -> float:
    """‖A ⊗ x − y‖²₂ + λ Σ x_j, the sum taken over finite coordinates."""
    x = as_vector(x)
    fit = residual(A, x, y, 2) ** 2
    return float(fit + lam * np.sum(x[np.isfinite(x)]))


def _can_drop(finite_a: np.ndarray, active: np.ndarray, j: int) -> bool:
    """Whether column j can go to −∞ with every row keeping a finite active entry."""
    remaining = active.copy()
    remaining[j] = False
    if not remaining.any():
        return False
    return bool(np.all((finite_a & remaining[None, :]).any(axis=1)))


def irsls(A, y, lam: float, x0, config: Optional[IrslsConfig] = None) -> RegressionSolution:
    """
    Regularized regression by iteratively reshifted least squares.

    A coordinate that runs away (more than divergence_factor·λ below its
    start, or below min(y) − range(A) − divergence_factor·λ) is set to −∞
    and the iteration continues on the remaining columns; the last column a
    row depends on is never removed. Stops when an iteration moves the finite
    coordinates by less than tol in the max norm without sending any to −∞.

    Args:
        A: n×d max-plus matrix.
        y: Finite target.
        lam: Penalty weight λ >= 0.
        x0: Finite start.
        config: IRSLS settings.

    Returns:
        Solution with the penalized objective in `objective`.
    """
    config = config or IrslsConfig()
    if lam < 0 or not np.isfinite(lam):
        raise ValidationError(f"lambda must be a finite non-negative number, got {lam}", field="lambda")
    a = maxplus_entries(A)
    y = as_vector(y, "y")
    x0 = as_vector(x0, "x0")
    require_finite(x0, "x0")

    finite_a = np.isfinite(a)
    values = a[finite_a]
    spread = float(values.max() - values.min())
    floor = float(y.min()) - spread - config.divergence_factor * lam
    start = x0.copy()

    x = x0.copy()
    active = np.ones(a.shape[1], dtype=bool)
    status = SolveStatus.ITERATION_CAP
    objectives = []
    trace = []
    iterations = 0

    while iterations < config.max_iter:
        iterations += 1
        columns = np.flatnonzero(active)
        stacked = vstack(TropicalMatrix.maxplus(a[:, columns]), identity(columns.size))
        target = np.concatenate([y, x[columns] - lam / 2.0])
        solution = newton_solve(RegressionProblem(stacked, target), config.newton, x[columns])

        x_new = x.copy()
        x_new[columns] = solution.x
        step = float(np.max(np.abs(x_new[columns] - x[columns])))

        dropped = []
        if lam > 0:
            runaway = active & (
                (x_new < start - config.divergence_factor * lam) | (x_new < floor)
            )
            for j in np.flatnonzero(runaway)[np.argsort(x_new[runaway])]:
                if _can_drop(finite_a, active, j):
                    active[j] = False
                    x_new[j] = -np.inf
                    dropped.append(int(j))
        x = x_new
        objectives.append(penalized_objective(a, x, y, lam))
        trace.append((x.copy(), objectives[-1]))
        if dropped:
            logger.debug(f"irsls: iteration {iterations} sent columns {dropped} to -inf")
        elif step < config.tol:
            status = SolveStatus.LOCAL
            break

    logger.info(
        f"irsls: lambda={lam} iterations={iterations} inactive={int((~active).sum())} status={status.value}"
    )
    return RegressionSolution(
        x=x,
        residual=residual(a, x, y, 2),
        iterations=iterations,
        status=status,
        trace=trace,
        notes=[f"columns at -inf: {np.flatnonzero(~active).tolist()}"],
        objective=objectives[-1] if objectives else penalized_objective(a, x, y, lam),
    )
