"""
Max-plus polynomial fitting.

p(x) = max_n (a_n + S(n,:)·x) is max-plus linear in its coefficients a, so
fitting a with fixed slopes S is the regression X ⊗ a ≈ y with the design
X_ij = S(j,:)·x(i).
"""
import logging
from typing import NamedTuple, Optional

import numpy as np

from models.applications import TropicalPolynomial
from models.regression import NewtonConfig, RegressionProblem
from models.tropical_matrix import TropicalMatrix, as_vector
from regression.inf_norm import residual
from regression.newton import multistart_newton
from utils.error_handlers import DimensionError

logger = logging.getLogger(__name__)


class PolynomialProtocol(NamedTuple):
    """Sampled fitting experiment: data, slopes and, when known, the true polynomial."""
    points: np.ndarray
    y: np.ndarray
    S: np.ndarray
    truth: Optional[TropicalPolynomial]


def _as_columns(values, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2:
        raise DimensionError(f"{name} must be 1-D or 2-D, got shape {array.shape}")
    return array


def build_design(points, S) -> TropicalMatrix:
    """
    Design matrix X_ij = S(j,:)·x(i).

    Args:
        points: N×m sample points (a 1-D array is N univariate points).
        S: k×m slopes (a 1-D array is k univariate slopes).

    Returns:
        N×k max-plus matrix.
    """
    points = _as_columns(points, "points")
    slopes = _as_columns(S, "S")
    if points.shape[1] != slopes.shape[1]:
        raise DimensionError(f"points have {points.shape[1]} variables, slopes have {slopes.shape[1]}")
    return TropicalMatrix.maxplus(points @ slopes.T)


def poly_eval(poly: TropicalPolynomial, x) -> float:
    """p_{a,S}(x) = max_n (a_n + S(n,:)·x)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != poly.variables:
        raise DimensionError(f"point has {x.shape[0]} variables, polynomial has {poly.variables}")
    return float(np.max(poly.a + poly.S @ x))


def poly_residual(poly: TropicalPolynomial, points, y) -> float:
    """‖X ⊗ a − y‖₂ over the sample."""
    return residual(build_design(points, poly.S), poly.a, as_vector(y, "y"), 2)


def poly_fit(points, y, S, config: Optional[NewtonConfig] = None) -> TropicalPolynomial:
    """
    Fit the coefficients of a max-plus polynomial with fixed slopes.

    Args:
        points: Sample points.
        y: Observed values.
        S: Slopes.
        config: Newton settings.

    Returns:
        The fitted polynomial.
    """
    design = build_design(points, S)
    solution = multistart_newton(RegressionProblem(design, y), config or NewtonConfig())
    logger.info(f"poly_fit: {design.cols} monomials, residual={solution.residual:.6g}")
    return TropicalPolynomial(_as_columns(S, "S"), solution.x)


def univariate_protocol(seed: int = 0, points: int = 20, sigma: float = 0.5) -> PolynomialProtocol:
    """
    Standard-normal sample points, p(x) = max(0, 1 + x, 2x) and Gaussian noise.
    """
    rng = np.random.default_rng(seed)
    truth = TropicalPolynomial(np.array([[0.0], [1.0], [2.0]]), np.array([0.0, 1.0, 0.0]))
    x = rng.standard_normal(points)
    clean = np.array([poly_eval(truth, [v]) for v in x])
    y = clean + sigma * rng.standard_normal(points)
    return PolynomialProtocol(x.reshape(-1, 1), y, truth.S.copy(), truth)


def quadratic_bowl_protocol(seed: int = 0, points: int = 200) -> PolynomialProtocol:
    """
    Points uniform in [−1, 1]², targets ‖x‖² and slopes 0, ±e₁, ±e₂.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(points, 2))
    y = np.sum(x ** 2, axis=1)
    S = np.array([[0.0, 1.0, -1.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0, -1.0]]).T
    return PolynomialProtocol(x, y, S, None)
