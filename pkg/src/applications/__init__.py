"""
Inverse problems solved with tropical regression: system identification,
network model reduction and max-plus polynomial fitting.
"""
from applications.sysid import (
    simulate_orbit, sysid_fit, frob_residual, row_residuals, evidence_matrix, loglik, predictions
)
from applications.networks import (
    shortest_paths, largest_component, check_distance_matrix, network_reduce, feature_table,
    load_dolphins
)
from applications.polynomials import (
    PolynomialProtocol, build_design, poly_eval, poly_residual, poly_fit,
    univariate_protocol, quadratic_bowl_protocol
)

__all__ = [
    'simulate_orbit', 'sysid_fit', 'frob_residual', 'row_residuals', 'evidence_matrix', 'loglik',
    'predictions',
    'shortest_paths', 'largest_component', 'check_distance_matrix', 'network_reduce',
    'feature_table', 'load_dolphins',
    'PolynomialProtocol', 'build_design', 'poly_eval', 'poly_residual', 'poly_fit',
    'univariate_protocol', 'quadratic_bowl_protocol',
]
