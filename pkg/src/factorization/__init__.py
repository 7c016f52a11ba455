"""
Min-plus low-rank factorization: alternating two-factor fits and the
symmetric one-factor fit used for network model reduction.
"""
from factorization.normalization import (
    minplus_product, factor_residual, symmetric_residual, column_order, normalize_factors
)
from factorization.alternating import alternating_factorize, fit_minplus_vector
from factorization.symmetric import (
    assignment, jacobi_map, local_symmetric_residual, symmetric_factorize, neighborhood_labels
)

__all__ = [
    'minplus_product', 'factor_residual', 'symmetric_residual', 'column_order', 'normalize_factors',
    'alternating_factorize', 'fit_minplus_vector',
    'assignment', 'jacobi_map', 'local_symmetric_residual', 'symmetric_factorize',
    'neighborhood_labels',
]
