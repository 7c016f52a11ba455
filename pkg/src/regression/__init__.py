"""
Tropical regression solvers: ∞-norm closed form, Newton with undershooting,
steepest descent, exhaustive exact search and IRSLS.
"""
from regression.inf_norm import (
    residual, squared_residual, principal_solution, solve_inf, max_plus_convexity_gap
)
from regression.newton import newton_step, newton_solve, multistart_newton
from regression.descent import subgradient, steepest_descent, exit_time, flow
from regression.exhaustive import brute_force_exact
from regression.irsls import irsls, penalized_objective

__all__ = [
    'residual', 'squared_residual', 'principal_solution', 'solve_inf', 'max_plus_convexity_gap',
    'newton_step', 'newton_solve', 'multistart_newton',
    'subgradient', 'steepest_descent', 'exit_time', 'flow',
    'brute_force_exact',
    'irsls', 'penalized_objective',
]
