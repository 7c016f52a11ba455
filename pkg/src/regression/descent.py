"""
Steepest descent along piecewise smooth flow segments.

Within the closure of a pattern's domain the gradient flow of the squared
residual moves every class of columns together and relaxes exponentially
toward the closest local minimum Ψ. A segment ends either at Ψ or when some
row changes its argmax, which is found by root bracketing on the closed-form
trajectories.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np
from scipy.optimize import root_scalar

from algebra.semiring import maxplus_entries
from geometry.enumeration import iter_subpatterns
from geometry.patterns import compute_pattern, normal_projection, pattern_geometry
from models import SolveStatus
from models.pattern import Pattern, PatternGeometry
from models.regression import DescentConfig, RegressionProblem, RegressionSolution
from models.tropical_matrix import as_vector
from regression.inf_norm import residual
from utils.error_handlers import EnumerationCapExceeded

logger = logging.getLogger(__name__)


def _class_gradient(a: np.ndarray, y: np.ndarray, x: np.ndarray,
                    geometry: PatternGeometry) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gradient plus the per-class row counts and sizes."""
    ell = geometry.ell
    row_class = geometry.class_of[ell]
    m = geometry.class_count
    residuals = a[np.arange(a.shape[0]), ell] + x[ell] - y
    sums = np.bincount(row_class, weights=residuals, minlength=m)
    rows = np.bincount(row_class, minlength=m)
    sizes = np.bincount(geometry.class_of, minlength=m)
    gradient = (sums / sizes)[geometry.class_of]
    gradient[~geometry.pattern.support_mask()] = 0.0
    return gradient, rows, sizes


def _gradient_admissible(gradient: np.ndarray, P: Pattern, current: Pattern) -> bool:
    """Moving along −∇ keeps P_i and drops the rest of pattern(x)_i iff ∇_j < ∇_k."""
    for p_row, q_row in zip(P.sets, current.sets):
        dropped = q_row - p_row
        if not dropped:
            continue
        kept = max(gradient[j] for j in p_row)
        if not all(kept < gradient[k] for k in dropped):
            return False
    return True


def subgradient(A, y, x, P: Pattern, tie_tol: float = 0.0) -> Tuple[np.ndarray, bool]:
    """
    Class-averaged gradient ∇(x, P) and its admissibility.

    ∇_j is the sum of the row residuals (A ⊗ x − y)_i over rows mapped to the
    class of j, divided by the class size; 0 for classes without rows.

    Args:
        A: n×d max-plus matrix.
        y: Target.
        x: Point with P ⪯ pattern(x).
        P: Feasible pattern.
        tie_tol: Tie tolerance used to recompute pattern(x).

    Returns:
        (gradient, admissible).
    """
    a = maxplus_entries(A)
    y = as_vector(y, "y")
    x = as_vector(x)
    geometry = pattern_geometry(a, P)
    gradient, _, _ = _class_gradient(a, y, x, geometry)
    current = compute_pattern(a, x, tie_tol)
    return gradient, _gradient_admissible(gradient, P, current)


def flow(x: np.ndarray, psi: np.ndarray, rates: np.ndarray, t: float) -> np.ndarray:
    """φ(x, t)_j = x_j + (1 − e^{−rate_j t}) (Ψ − x)_j."""
    step = -np.expm1(-rates * t)
    with np.errstate(invalid="ignore"):
        delta = np.where(np.isfinite(psi), psi - x, 0.0)
    return x + step * delta


def exit_time(a: np.ndarray, x: np.ndarray, psi: np.ndarray, rates: np.ndarray,
              P: Pattern, config: DescentConfig) -> float:
    """
    First t > 0 at which φ(x, t) leaves the closure of the domain of P.

    For every row i and column j ∉ P_i the gap
    g(t) = a_ij + φ_j(t) − a_iℓ − φ_ℓ(t) is sampled on a geometric grid up to
    horizon / min rate; the first sign change is refined with Brent's method.

    Returns:
        The exit time, or ∞ if the flow reaches Ψ inside the closure.
    """
    positive = rates[rates > 0]
    if positive.size == 0:
        return np.inf
    t_max = config.horizon / positive.min()
    t_min = 1e-9 / positive.max()
    grid = np.concatenate([[0.0], np.geomspace(t_min, t_max, 400)])
    trajectory = np.array([flow(x, psi, rates, t) for t in grid])  # (T, d)

    ell = P.subpattern()
    best = np.inf
    for i, members in enumerate(P.sets):
        li = ell[i]
        for j in np.flatnonzero(np.isfinite(a[i])):
            if j in members:
                continue

            values = a[i, j] + trajectory[:, j] - a[i, li] - trajectory[:, li]
            # a column tied within the tolerance at t = 0 starts from its own gap
            offset = max(0.0, values[0])

            def gap(t, i=i, j=j, li=li, offset=offset):
                phi = flow(x, psi, rates, t)
                return a[i, j] + phi[j] - a[i, li] - phi[li] - offset

            crossing = np.flatnonzero(values[1:] - offset > config.xtol)
            if crossing.size == 0:
                continue
            k = crossing[0] + 1
            lo, hi = grid[k - 1], grid[k]
            if lo >= best:
                continue
            if gap(lo) > 0:
                t_star = lo
            else:
                t_star = root_scalar(gap, bracket=(lo, hi), method="brentq", xtol=config.xtol).root
            best = min(best, t_star)
    return best


def _choose_direction(a: np.ndarray, y: np.ndarray, x: np.ndarray, current: Pattern,
                      config: DescentConfig, notes: List[str]):
    """Admissible subgradient of largest norm over P ⪯ pattern(x)."""
    try:
        candidates = list(iter_subpatterns(current, config.enumeration_cap))
    except EnumerationCapExceeded as e:
        message = f"enumeration cap exceeded ({e.details}); using the subpattern gradient"
        if message not in notes:
            notes.append(message)
        logger.warning(message)
        candidates = [Pattern.singleton(current.subpattern(), current.d)]

    best = None
    for P in candidates:
        geometry = pattern_geometry(a, P)
        if geometry.lam > 1e-9:
            continue
        gradient, rows, sizes = _class_gradient(a, y, x, geometry)
        if len(candidates) > 1 and not _gradient_admissible(gradient, P, current):
            continue
        norm = float(np.linalg.norm(gradient))
        if best is None or norm > best[0] + 1e-15:
            best = (norm, P, geometry, rows, sizes)
    return best


def steepest_descent(problem: RegressionProblem, x0, config: Optional[DescentConfig] = None
                     ) -> RegressionSolution:
    """
    Follow the steepest descent path of R(x) = ‖A ⊗ x − y‖²/2 from x0.

    Each segment picks the admissible subgradient of largest norm among the
    patterns below pattern(x) (ties: lexicographically first pattern), flows
    along it in closed form and stops at Ψ or at the first domain exit. The
    path ends where the largest admissible subgradient vanishes.

    Args:
        problem: 2-norm problem.
        x0: Finite start.
        config: Descent settings.

    Returns:
        Solution with status local, or iteration-cap after max_segments.
    """
    config = config or DescentConfig()
    a = problem.A.entries
    y = problem.y
    x = as_vector(x0, "x0")
    notes: List[str] = []
    trace = [(x.copy(), residual(a, x, y, 2))] if config.record_trace else []
    status = SolveStatus.ITERATION_CAP
    segments = 0

    while segments < config.max_segments:
        current = compute_pattern(a, x, config.tie_tol)
        choice = _choose_direction(a, y, x, current, config, notes)
        if choice is None or choice[0] <= config.tol:
            status = SolveStatus.LOCAL
            break
        _, P, geometry, rows, sizes = choice
        psi = normal_projection(a, P, y, x, keep_off_support=True, geometry=geometry).psi
        rates = (rows / sizes)[geometry.class_of]
        rates[~P.support_mask()] = 0.0

        t_star = exit_time(a, x, psi, rates, P, config)
        x = psi.copy() if np.isinf(t_star) else flow(x, psi, rates, t_star)
        segments += 1
        if config.record_trace:
            trace.append((x.copy(), residual(a, x, y, 2)))
        logger.debug(f"steepest_descent: segment {segments} pattern {P} t*={t_star:.6g}")

    return RegressionSolution(
        x=x,
        residual=residual(a, x, y, 2),
        iterations=segments,
        status=status,
        trace=trace,
        notes=notes,
    )
