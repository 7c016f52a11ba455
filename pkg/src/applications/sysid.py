"""
System identification of stochastic max-plus linear systems

    x(n+1) = A ⊗ x(n) + ζ(n),   ζ(n) ~ N(0, σ² I).

Maximizing the likelihood of an observed orbit splits into d independent
2-norm regressions, one per row of A, all sharing the design matrix
X(:, 0:N)ᵀ.
"""
import logging
from dataclasses import replace
from typing import Optional, Union

import numpy as np

from algebra.semiring import maxplus_entries, mp_matvec, product
from models import Semiring
from models.applications import SysIdResult, TimeSeries
from models.regression import IrslsConfig, RegressionProblem
from models.tropical_matrix import TropicalMatrix, as_vector
from regression.irsls import irsls
from regression.newton import multistart_newton
from utils.error_handlers import DimensionError, ValidationError
from utils.performance import measure_time, parallel_map
from utils.validators import raise_on_errors, require_finite, validate_integer, validate_number

logger = logging.getLogger(__name__)

SeriesLike = Union[TimeSeries, np.ndarray]


def _series(X: SeriesLike) -> TimeSeries:
    return X if isinstance(X, TimeSeries) else TimeSeries(X)


def simulate_orbit(M, x0, N: int, sigma: float = 0.0, seed: int = 0) -> TimeSeries:
    """
    Sample x(0..N) of the stochastic system driven by M.

    Args:
        M: d×d max-plus matrix, every row with a finite entry.
        x0: Finite initial state.
        N: Number of steps.
        sigma: Noise standard deviation.
        seed: Seed of the noise generator.

    Returns:
        The orbit as a TimeSeries.
    """
    raise_on_errors([
        validate_integer(N, "N", 1),
        validate_number(sigma, "sigma", 0.0),
    ])
    m = maxplus_entries(M)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"system matrix must be square, got {m.shape}")
    if not np.isfinite(m).any(axis=1).all():
        raise ValidationError("every row of the system matrix needs a finite entry", field="M")
    x = as_vector(x0, "x0")
    require_finite(x, "x0")
    if x.shape[0] != m.shape[0]:
        raise DimensionError(f"x0 has length {x.shape[0]}, expected {m.shape[0]}")

    rng = np.random.default_rng(seed)
    orbit = np.empty((m.shape[0], N + 1))
    orbit[:, 0] = x
    for n in range(N):
        orbit[:, n + 1] = mp_matvec(m, orbit[:, n]) + sigma * rng.standard_normal(m.shape[0])
    return TimeSeries(orbit)


def predictions(A, X: SeriesLike) -> np.ndarray:
    """One-step predictions A ⊗ X(:, 0:N)."""
    series = _series(X)
    a = maxplus_entries(A)
    if a.shape != (series.d, series.d):
        raise DimensionError(f"system matrix {a.shape} does not match a {series.d}-dimensional series")
    return product(a, series.past, Semiring.MAX_PLUS)


def row_residuals(A, X: SeriesLike) -> np.ndarray:
    """‖A(k,:) ⊗ X(:, 0:N) − X(k, 1:N+1)‖²₂ for every row k."""
    series = _series(X)
    return np.sum((predictions(A, series) - series.future) ** 2, axis=1)


def frob_residual(A, X: SeriesLike) -> float:
    """‖A ⊗ X(:, 0:N) − X(:, 1:N+1)‖²_F, the sum of the row residuals."""
    return float(np.sum(row_residuals(A, X)))


def loglik(A, X: SeriesLike, sigma: float) -> float:
    """
    Gaussian log-likelihood of the orbit under A:
    −(Nd/2)·log(2πσ²) − ‖A ⊗ X(:, 0:N) − X(:, 1:N+1)‖²_F / (2σ²).
    """
    raise_on_errors([validate_number(sigma, "sigma", 0.0, min_inclusive=False)])
    series = _series(X)
    count = series.steps * series.d
    return float(-0.5 * count * np.log(2.0 * np.pi * sigma ** 2) - frob_residual(A, series) / (2.0 * sigma ** 2))


def evidence_matrix(A, X: SeriesLike, tie_tol: float = 0.0) -> np.ndarray:
    """
    S(i, j) = #{n : a_ij + x_j(n) attains max_k (a_ik + x_k(n))}.

    Every attaining column is counted, so a row sums to more than N when
    ties occur. Entries at −∞ never count.
    """
    series = _series(X)
    a = maxplus_entries(A)
    values = a[:, :, None] + series.past[None, :, :]
    top = values.max(axis=1, keepdims=True)
    attains = np.isfinite(values) & (values >= top - tie_tol)
    return attains.sum(axis=2).astype(int)


def _row_problem(series: TimeSeries, k: int) -> RegressionProblem:
    return RegressionProblem(TropicalMatrix.maxplus(series.past.T), series.future[k])


@measure_time
def sysid_fit(X: SeriesLike, lam: float = 0.0, config: Optional[IrslsConfig] = None,
              sigma: Optional[float] = None) -> SysIdResult:
    """
    Fit the system matrix row by row.

    Row k solves min_x ‖x ⊗ X(:, 0:N) − X(k, 1:N+1)‖₂ with multistart Newton.
    With λ > 0 the row fit then warm-starts IRSLS on the penalized problem,
    which sends coefficients without evidence to −∞. Rows draw their
    multistart seeds from SeedSequence(seed).spawn(d) and may run in
    parallel; the result does not depend on the thread count.

    Args:
        X: Observed orbit.
        lam: Penalty weight λ >= 0.
        config: IRSLS settings; config.newton drives the row fits.
        sigma: Noise level, only used for the log-likelihood.

    Returns:
        SysIdResult with the fitted matrix and its diagnostics.
    """
    config = config or IrslsConfig()
    raise_on_errors([validate_number(lam, "lambda", 0.0)])
    series = _series(X)
    streams = np.random.SeedSequence(config.newton.seed).spawn(series.d)

    def fit_row(k: int) -> np.ndarray:
        seed = int(streams[k].generate_state(1)[0])
        newton = replace(config.newton, seed=seed, threads=1)
        problem = _row_problem(series, k)
        solution = multistart_newton(problem, newton)
        if lam > 0:
            solution = irsls(problem.A, problem.y, lam, solution.x, replace(config, newton=newton))
        logger.debug(f"sysid row {k}: residual={solution.residual:.6g}")
        return solution.x

    A_hat = np.array(parallel_map(fit_row, range(series.d), config.newton.threads))
    residuals = row_residuals(A_hat, series)
    result = SysIdResult(
        A_hat=TropicalMatrix.maxplus(A_hat),
        frob_residual_sq=float(np.sum(residuals)),
        evidence=evidence_matrix(A_hat, series),
        row_residuals_sq=residuals,
        loglik=None if sigma is None else loglik(A_hat, series, sigma),
        lam=float(lam),
    )
    logger.info(
        f"sysid_fit: d={series.d} N={series.steps} lambda={lam} frob_residual_sq={result.frob_residual_sq:.6g}"
    )
    return result
