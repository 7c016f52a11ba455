"""
Dense grid search: an independent oracle for low-dimensional regressions.
"""
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np

import config
from models import Norm
from models.regression import RegressionProblem
from utils.error_handlers import CapExceededError, ValidationError
from utils.performance import parallel_map
from utils.validators import raise_on_errors, validate_number

logger = logging.getLogger(__name__)

MAX_GRID_DIMENSION = 4
CHUNK_POINTS = 1 << 15

Box = Union[Tuple[float, float], Sequence[Tuple[float, float]]]


def _axes(box: Box, d: int, step: float) -> Tuple[np.ndarray, ...]:
    bounds = np.asarray(box, dtype=float)
    if bounds.shape == (2,):
        bounds = np.tile(bounds, (d, 1))
    if bounds.shape != (d, 2):
        raise ValidationError(f"box needs {d} intervals, got shape {bounds.shape}", field="box")
    if not np.all(np.isfinite(bounds)) or np.any(bounds[:, 1] < bounds[:, 0]):
        raise ValidationError("box intervals must be finite with lo <= hi", field="box")
    axes = []
    for lo, hi in bounds:
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        axes.append(lo + step * np.arange(count))
    return tuple(axes)


def grid_oracle(problem: RegressionProblem, box: Box, step: float,
                p: Optional[Union[Norm, str, float]] = None,
                threads: Optional[int] = None) -> Tuple[np.ndarray, float]:
    """
    Best point of a regular grid for ‖A ⊗ x − y‖_p.

    The grid holds lo, lo + step, ... up to hi on every axis. Points are
    evaluated in chunks; ties keep the lexicographically smallest point.

    Args:
        problem: Regression problem with d <= 4.
        box: One (lo, hi) interval for all axes or one per axis.
        step: Grid spacing.
        p: Norm; the problem's norm when None.
        threads: Workers for chunk evaluation.

    Returns:
        (x_best, residual_best).

    Raises:
        CapExceededError: If the grid has more than GRID_POINT_CAP points.
    """
    raise_on_errors([validate_number(step, "step", 0.0, min_inclusive=False)])
    d = problem.d
    if d > MAX_GRID_DIMENSION:
        raise ValidationError(f"grid search supports d <= {MAX_GRID_DIMENSION}, got {d}", field="d")
    norm = problem.norm if p is None else p
    order = norm.order if isinstance(norm, Norm) else (Norm(norm).order if norm in ("inf", "two") else float(norm))

    axes = _axes(box, d, step)
    shape = tuple(axis.size for axis in axes)
    total = int(np.prod(shape, dtype=np.int64))
    if total > config.GRID_POINT_CAP:
        raise CapExceededError("grid too large", details=f"{total} points exceed the cap {config.GRID_POINT_CAP}")

    a = problem.A.entries
    y = problem.y

    def evaluate(start: int) -> Tuple[float, int]:
        flat = np.arange(start, min(start + CHUNK_POINTS, total))
        index = np.unravel_index(flat, shape)
        points = np.stack([axes[j][index[j]] for j in range(d)], axis=1)
        image = np.max(a[None, :, :] + points[:, None, :], axis=2)
        values = np.linalg.norm(image - y[None, :], ord=order, axis=1)
        best = int(np.argmin(values))
        return float(values[best]), int(flat[best])

    chunks = parallel_map(evaluate, range(0, total, CHUNK_POINTS), threads)
    residual_best, flat_best = min(chunks)
    index = np.unravel_index(flat_best, shape)
    x_best = np.array([axes[j][index[j]] for j in range(d)])
    logger.info(f"grid_oracle: {total} points, best residual {residual_best:.6g}")
    return x_best, residual_best
