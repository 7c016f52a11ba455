"""
Newton's method with undershooting for 2-norm tropical regression.

The Newton map sends x to the closest local minimum of the singleton
pattern picked by the per-row smallest argmax index. Undershooting blends
the target with the current iterate, which breaks the periodic orbits the
plain iteration can fall into.
"""
import logging
from typing import Optional

import numpy as np

from algebra.semiring import maxplus_entries
from models import SolveStatus
from models.regression import NewtonConfig, RegressionProblem, RegressionSolution
from models.tropical_matrix import as_vector
from regression.inf_norm import residual, solve_inf
from utils.error_handlers import PatternError
from utils.performance import parallel_map

logger = logging.getLogger(__name__)


def subpattern_of(a: np.ndarray, x: np.ndarray) -> np.ndarray:
    """ℓ(i) = min argmax_j (a_ij + x_j) for every row."""
    with np.errstate(invalid="ignore"):
        values = a + x[None, :]
    ell = np.argmax(values, axis=1)
    top = values[np.arange(a.shape[0]), ell]
    if not np.all(np.isfinite(top)):
        raise PatternError("(A ⊗ x)_i is not finite", details="Newton step needs every row finite")
    return ell


def newton_step(A, y, x) -> np.ndarray:
    """
    Newton update N(x): Ψ of the singleton subpattern of x.

    Every coordinate chosen by some row moves to the mean of y_i − a_iℓ(i)
    over the rows choosing it; other coordinates keep their value.

    Args:
        A: n×d max-plus matrix.
        y: Target, length n.
        x: Current point, A ⊗ x finite in every row.

    Returns:
        The new point.
    """
    a = maxplus_entries(A)
    y = as_vector(y, "y")
    x = as_vector(x)
    ell = subpattern_of(a, x)
    targets = y - a[np.arange(a.shape[0]), ell]
    d = a.shape[1]
    counts = np.bincount(ell, minlength=d)
    sums = np.bincount(ell, weights=targets, minlength=d)
    return np.where(counts > 0, sums / np.maximum(counts, 1), x)


def newton_solve(problem: RegressionProblem, config: Optional[NewtonConfig] = None,
                 x0=None) -> RegressionSolution:
    """
    Iterate x ← (1 − μ) x + μ N(x) from x0, keeping the best iterate.

    Stops when the best residual has not improved for config.stall_window
    iterations or after config.max_iter iterations. Status is local when the
    returned point is a fixed point of N, stalled otherwise, iteration-cap if
    the cap ended the run.

    Args:
        problem: 2-norm problem.
        config: Newton settings (mu, stall_window, max_iter, tol).
        x0: Start; defaults to the ∞-norm optimum.

    Returns:
        The best iterate seen.
    """
    config = config or NewtonConfig()
    a = problem.A.entries
    y = problem.y
    x = solve_inf(problem).x if x0 is None else as_vector(x0, "x0")
    mu = config.mu

    best_x = x.copy()
    best_res = residual(a, x, y, 2)
    trace = [(x.copy(), best_res)] if config.record_trace else []
    unimproved = 0
    iterations = 0
    status = SolveStatus.ITERATION_CAP

    while iterations < config.max_iter:
        iterations += 1
        target = newton_step(a, y, x)
        with np.errstate(invalid="ignore"):
            x = np.where(np.isfinite(x), (1.0 - mu) * x + mu * target, x)
        res = residual(a, x, y, 2)
        if config.record_trace:
            trace.append((x.copy(), res))
        if res < best_res - config.tol:
            best_res, best_x = res, x.copy()
            unimproved = 0
        else:
            if res < best_res:
                best_res, best_x = res, x.copy()
            unimproved += 1
        if unimproved >= config.stall_window:
            status = SolveStatus.STALLED
            break

    if status is SolveStatus.STALLED:
        finite = np.isfinite(best_x)
        with np.errstate(invalid="ignore"):
            drift = np.abs(newton_step(a, y, best_x) - best_x)
        if np.all(drift[finite] <= max(config.tol, 1e-12) * (1.0 + np.abs(best_x[finite]))):
            status = SolveStatus.LOCAL

    logger.debug(
        f"newton_solve: mu={mu} iterations={iterations} residual={best_res:.6g} status={status.value}"
    )
    return RegressionSolution(
        x=best_x,
        residual=best_res,
        iterations=iterations,
        status=status,
        trace=trace,
    )


def multistart_newton(problem: RegressionProblem, config: Optional[NewtonConfig] = None,
                      x0=None) -> RegressionSolution:
    """
    Best of config.starts Newton runs, each with mu then refine_mu.

    Start 0 is x0 (or the ∞-norm optimum x*); start s > 0 is x* perturbed by
    standard normal noise scaled by the ∞-norm residual α (by 1 when α = 0).
    Start s draws from its own stream of SeedSequence(seed).spawn, so the
    result does not depend on the thread schedule; ties go to the lowest start.

    Args:
        problem: 2-norm problem.
        config: Newton settings.
        x0: Optional warm start used as start 0.

    Returns:
        The best solution across starts.
    """
    config = config or NewtonConfig()
    inf_solution = solve_inf(problem)
    x_star = inf_solution.x
    scale = inf_solution.residual if inf_solution.residual > 0 else 1.0
    streams = np.random.SeedSequence(config.seed).spawn(config.starts)
    first = x_star if x0 is None else as_vector(x0, "x0")

    def run(start: int) -> RegressionSolution:
        if start == 0:
            origin = first.copy()
        else:
            rng = np.random.default_rng(streams[start])
            origin = x_star + scale * rng.standard_normal(problem.d)
        coarse = newton_solve(problem, config.with_mu(config.mu), origin)
        fine = newton_solve(problem, config.with_mu(config.refine_mu), coarse.x)
        fine.iterations += coarse.iterations
        if config.record_trace:
            fine.trace = coarse.trace + fine.trace
        return fine if fine.residual <= coarse.residual else coarse

    results = parallel_map(run, range(config.starts), config.threads)
    best_index = 0
    for index, candidate in enumerate(results):
        if candidate.residual < results[best_index].residual:
            best_index = index
    best = results[best_index]
    best.iterations = sum(r.iterations for r in results)
    best.notes.append(f"best of {config.starts} starts: start {best_index}")
    logger.info(f"multistart_newton: residual={best.residual:.6g} from start {best_index}")
    return best
