"""
Brute-force oracles and adversarial instances for verification runs.
"""
from oracles.grid import grid_oracle
from oracles.census import count_bound, pattern_census, sampled_census
from oracles.setcover import (
    reduction_parameters, setcover_reduction, has_binary_descent, has_cover, iter_instances,
    verify_reduction
)
from oracles.cycles import cycle_mean_bruteforce, bellman_ford_closure, star_oracle

__all__ = [
    'grid_oracle',
    'count_bound', 'pattern_census', 'sampled_census',
    'reduction_parameters', 'setcover_reduction', 'has_binary_descent', 'has_cover',
    'iter_instances', 'verify_reduction',
    'cycle_mean_bruteforce', 'bellman_ford_closure', 'star_oracle',
]
