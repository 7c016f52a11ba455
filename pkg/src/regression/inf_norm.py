"""
Residuals and the closed-form ∞-norm optimum.
"""
import logging

import numpy as np

from algebra.semiring import maxplus_entries, mp_matvec
from models import Norm, SolveStatus
from models.regression import RegressionProblem, RegressionSolution
from models.tropical_matrix import as_vector
from utils.error_handlers import DimensionError, ValidationError

logger = logging.getLogger(__name__)


def _order(p) -> float:
    if isinstance(p, Norm):
        return p.order
    if p in ("inf", "two"):
        return Norm(p).order
    p = float(p)
    if p not in (2.0, np.inf):
        raise ValidationError(f"only p = 2 and p = inf are supported, got {p}", field="p")
    return p


def residual(A, x, y, p=2) -> float:
    """
    ‖A ⊗ x − y‖_p for p ∈ {2, ∞}.

    Returns:
        The norm, or +∞ when some (A ⊗ x)_i is −∞.
    """
    a = maxplus_entries(A)
    x = as_vector(x)
    y = as_vector(y, "y")
    if y.shape[0] != a.shape[0]:
        raise DimensionError(f"y has length {y.shape[0]} but A has {a.shape[0]} rows")
    image = mp_matvec(a, x)
    if not np.all(np.isfinite(image)):
        return np.inf
    return float(np.linalg.norm(image - y, ord=_order(p)))


def squared_residual(A, x, y) -> float:
    """R(x) = ‖A ⊗ x − y‖²₂ / 2."""
    return 0.5 * residual(A, x, y, 2) ** 2


def principal_solution(A, y) -> np.ndarray:
    """
    Greatest subsolution x̂ = −(Aᵀ ⊗ (−y)), so A ⊗ x̂ <= y.

    Columns without finite entries get −∞.
    """
    a = maxplus_entries(A)
    y = as_vector(y, "y")
    with np.errstate(invalid="ignore"):
        slack = y[:, None] - a
    x_hat = np.min(slack, axis=0)
    x_hat[np.isposinf(x_hat)] = -np.inf
    return x_hat


def solve_inf(problem: RegressionProblem) -> RegressionSolution:
    """
    Global ∞-norm optimum, the greatest element of the optimal set.

    x* = x̂ + α/2 with α = ‖A ⊗ x̂ − y‖_∞; the optimal residual is α/2.
    Cost O(nd).

    Args:
        problem: Any regression problem; its norm tag is not consulted.

    Returns:
        Solution with status optimal and the ∞-norm residual.
    """
    a = problem.A.entries
    x_hat = principal_solution(a, problem.y)
    alpha = float(np.max(np.abs(mp_matvec(a, x_hat) - problem.y)))
    x_star = x_hat + alpha / 2.0
    logger.debug(f"solve_inf: alpha={alpha:.6g}")
    return RegressionSolution(
        x=x_star,
        residual=residual(a, x_star, problem.y, np.inf),
        iterations=1,
        status=SolveStatus.OPTIMAL,
    )


def max_plus_convexity_gap(A, y, x, z, lam: float, mu: float) -> float:
    """
    max(λ + R∞(x), μ + R∞(z)) − R∞(max(λ + x, μ + z)).

    R∞ is max-plus convex, so the gap is non-negative for any weights with
    max(λ, μ) = 0.

    Raises:
        ValidationError: If max(λ, μ) is not 0.
    """
    if max(lam, mu) != 0.0:
        raise ValidationError(f"weights need max(lam, mu) = 0, got ({lam}, {mu})", field="lam")
    x = as_vector(x)
    z = as_vector(z, "z")
    combined = np.maximum(lam + x, mu + z)
    bound = max(lam + residual(A, x, y, np.inf), mu + residual(A, z, y, np.inf))
    return float(bound - residual(A, combined, y, np.inf))
