"""
Symmetric min-plus factorization D ≈ A ⊠ Aᵀ by approximate Newton updates.

For a fixed assignment K(A) the residual is an ordinary quadratic in A;
a few Jacobi sweeps on its normal equations give the Newton target, which is
blended with the current factor (undershooting).
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from factorization.alternating import _minplus_array, check_rank
from factorization.normalization import column_order, symmetric_residual
from models import Semiring
from models.factorization import AssignmentMatrix, FactorizationConfig, FactorizationResult
from models.tropical_matrix import TropicalMatrix
from utils.error_handlers import DimensionError
from utils.validators import require_finite

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-9


def _factor_array(A) -> np.ndarray:
    if isinstance(A, TropicalMatrix):
        return A.entries
    return np.asarray(A, dtype=float)


def assignment(A) -> AssignmentMatrix:
    """
    K(A)_ij = min(argmin_k (a_ik + a_jk)).

    Args:
        A: Finite n×d factor.

    Returns:
        AssignmentMatrix with 0-based indices, smallest index on ties.
    """
    a = _factor_array(A)
    require_finite(a, "A")
    sums = a[:, None, :] + a[None, :, :]
    return AssignmentMatrix(np.argmin(sums, axis=2), a.shape[1])


def local_symmetric_residual(K: AssignmentMatrix, A, D, include_diagonal: bool = True) -> float:
    """
    R_K(A) = Σ (d_ij − a_{iK_ij} − a_{jK_ij})², the quadratic for a frozen K.

    Equals ‖D − A ⊠ Aᵀ‖²_F when K = K(A).
    """
    a = _factor_array(A)
    d = _factor_array(D)
    n = a.shape[0]
    rows = np.arange(n)[:, None]
    cols = np.arange(n)[None, :]
    fitted = a[rows, K.K] + a[cols, K.K]
    diff = (d - fitted) ** 2
    if not include_diagonal:
        np.fill_diagonal(diff, 0.0)
    return float(np.sum(diff))


def jacobi_map(A_base, A_iter, D, include_diagonal: bool = True) -> np.ndarray:
    """
    One Jacobi sweep on the normal equations of R_K for K = K(A_base).

    J_ik = (d_ii·1_ik + Σ_{j≠i, K_ij=k} (d_ij − a'_jk)) / (2·1_ik + #{j≠i : K_ij=k})
    with 1_ik = [K_ii = k] and a' = A_iter. The diagonal terms are dropped
    when include_diagonal is false. Entries with a zero denominator keep
    their A_iter value.

    Returns:
        The updated n×d array.
    """
    base = _factor_array(A_base)
    a_iter = _factor_array(A_iter)
    d = _factor_array(D)
    n, rank = base.shape
    if a_iter.shape != base.shape or d.shape != (n, n):
        raise DimensionError(f"jacobi_map shapes disagree: A {base.shape}, A_iter {a_iter.shape}, D {d.shape}")

    K = assignment(base)
    onehot = K.one_hot()
    off_diagonal = ~np.eye(n, dtype=bool)
    onehot = (onehot & off_diagonal[:, :, None]).astype(float)

    numerator = np.einsum("ijk,ij->ik", onehot, d) - np.einsum("ijk,jk->ik", onehot, a_iter)
    denominator = onehot.sum(axis=1).astype(float)
    if include_diagonal:
        own = K.K[np.arange(n), np.arange(n)][:, None] == np.arange(rank)[None, :]
        numerator = numerator + own * np.diag(d)[:, None]
        denominator = denominator + 2.0 * own
    return np.where(denominator > 0, numerator / np.where(denominator > 0, denominator, 1.0), a_iter)


def symmetrize(C: np.ndarray) -> np.ndarray:
    """(C + Cᵀ)/2 when C is not symmetric within tolerance, C otherwise."""
    if C.shape[0] != C.shape[1]:
        raise DimensionError(f"symmetric factorization needs a square matrix, got {C.shape}")
    asymmetry = float(np.max(np.abs(C - C.T)))
    if asymmetry > SYMMETRY_TOL:
        logger.warning(f"input is not symmetric (max |C - C^T| = {asymmetry:.3g}); symmetrizing")
        return 0.5 * (C + C.T)
    return C


def _single_run(D: np.ndarray, rank: int, include_diagonal: bool, config: FactorizationConfig,
                stream: np.random.SeedSequence, initial: Optional[np.ndarray]
                ) -> Tuple[np.ndarray, List[float], int]:
    rng = np.random.default_rng(stream)
    if initial is not None:
        a = np.array(initial, dtype=float)
    else:
        a = D[:, rng.choice(D.shape[1], size=rank, replace=False)].copy()

    best_a = a.copy()
    history = [symmetric_residual(D, a, include_diagonal)]
    best_res = history[0]
    unimproved = 0
    iteration = 0
    while iteration < config.max_iter and unimproved < config.stall_window:
        target = a
        for _ in range(config.jacobi_steps):
            target = jacobi_map(a, target, D, include_diagonal)
        mu = config.mu_at(iteration)
        a = mu * target + (1.0 - mu) * a
        iteration += 1
        res = symmetric_residual(D, a, include_diagonal)
        history.append(res)
        if res < best_res - config.tol * max(1.0, best_res):
            best_res, best_a = res, a.copy()
            unimproved = 0
        else:
            if res < best_res:
                best_res, best_a = res, a.copy()
            unimproved += 1
    return best_a, history, iteration


def symmetric_factorize(C, d: int, include_diagonal: bool = True,
                        config: Optional[FactorizationConfig] = None,
                        initial=None) -> FactorizationResult:
    """
    Approximate C ≈ A ⊠ Aᵀ with an n×d min-plus factor A.

    The input is symmetrized if needed. Each outer iteration computes the
    Jacobi target from the current A (config.jacobi_steps sweeps) and blends
    it in with μ_k = max(min_mu, mu_decay^k). The run keeps the best factor
    and stops after stall_window iterations without improvement or after
    max_iter. With restarts the best run wins; the first restart may start
    from `initial`, the others from d distinct random columns of C.

    The residual is reported against the original C: full Frobenius, or
    off-diagonal only when include_diagonal is false. Columns are ordered as
    in normalize_factors; there is no translation gauge, so normalized is
    false.

    Args:
        C: Square finite min-plus matrix.
        d: Rank, 0 < d <= n.
        include_diagonal: Whether diagonal entries count.
        config: Factorization settings.
        initial: Optional starting factor.

    Returns:
        FactorizationResult with B = None.
    """
    config = config or FactorizationConfig()
    original = _minplus_array(C)
    require_finite(original, "C")
    D = symmetrize(original)
    check_rank(d, D.shape[0])

    streams = np.random.SeedSequence(config.seed).spawn(config.restarts)
    best = None
    for restart, stream in enumerate(streams):
        a, history, iterations = _single_run(
            D, d, include_diagonal, config, stream, initial if restart == 0 else None
        )
        res = symmetric_residual(D, a, include_diagonal)
        logger.info(f"symmetric_factorize restart {restart}: residual_sq={res:.6g} after {iterations} iterations")
        if best is None or res < best[1]:
            best = (a, res, history, iterations, restart)

    a, _, history, iterations, restart = best
    a = a[:, column_order(a)]
    notes = [f"best of {config.restarts} restarts: restart {restart}"]
    if D is not original:
        notes.append("input symmetrized")
    return FactorizationResult(
        A=TropicalMatrix(a, Semiring.MIN_PLUS),
        B=None,
        residual_sq=symmetric_residual(original, a, include_diagonal),
        sweeps=iterations,
        normalized=False,
        history=history,
        notes=notes,
    )


def neighborhood_labels(A) -> np.ndarray:
    """Closest hub of every vertex: argmin over the columns of its factor row."""
    return np.argmin(_factor_array(A), axis=1)
