"""
Exact 2-norm regression by exhaustive search over feasible patterns.
"""
import logging
from typing import Optional

import numpy as np

import config
from geometry.enumeration import iter_feasible_patterns
from geometry.patterns import class_anchor, complete_below, equivalence_classes, normal_projection
from models import SolveStatus
from models.pattern import PatternGeometry
from models.regression import RegressionProblem, RegressionSolution
from models.tropical_matrix import TropicalMatrix
from regression.inf_norm import residual
from utils.error_handlers import PatternError
from utils.performance import measure_time

logger = logging.getLogger(__name__)


@measure_time
def brute_force_exact(problem: RegressionProblem,
                      size_cap: Optional[int] = config.EXHAUSTIVE_SIZE_CAP) -> RegressionSolution:
    """
    Global 2-norm optimum.

    Walks the pattern tree with λ(F_v) = 0 pruning; at each feasible leaf the
    normal projection is computed and, when admissible, its residual competes.
    The optimum is attained at the admissible projection of its own pattern,
    so the best admissible leaf is global. Coordinates off the winning
    pattern's support are completed below every row maximum.

    Args:
        problem: Regression problem (its norm tag is not consulted).
        size_cap: Refuse n + d above this.

    Returns:
        Solution with status optimal.

    Raises:
        CapExceededError: If n + d exceeds size_cap.
    """
    a = problem.A.entries
    y = problem.y
    best_res = np.inf
    best_x = None
    best_pattern = None
    leaves = 0

    for P, F in iter_feasible_patterns(a, size_cap=size_cap):
        leaves += 1
        classes, class_of, ell = equivalence_classes(P)
        geometry = PatternGeometry(P, TropicalMatrix.maxplus(F), classes, class_of, ell, lam=0.0)
        projection = normal_projection(a, P, y, class_anchor(a, P), geometry=geometry)
        if not projection.admissible:
            continue
        if projection.residual_sq < best_res - 1e-12:
            best_res = projection.residual_sq
            best_x = projection.psi
            best_pattern = P

    if best_x is None:
        raise PatternError("no admissible pattern found", details=f"{leaves} feasible leaves")
    x = complete_below(a, best_x)
    logger.info(f"brute_force_exact: {leaves} feasible leaves, best pattern {best_pattern}")
    return RegressionSolution(
        x=x,
        residual=residual(a, x, y, 2),
        iterations=leaves,
        status=SolveStatus.OPTIMAL,
        notes=[f"pattern {best_pattern}"],
    )
