"""
Patterns of support, feasibility matrices, normal projections and admissibility.
"""
from geometry.patterns import (
    compute_pattern, feasibility_matrix, is_feasible, interior_point, equivalence_classes,
    pattern_geometry, class_anchor, normal_projection, is_admissible, local_residual,
    complete_below, is_fixed_point,
)
from geometry.enumeration import iter_feasible_patterns, iter_subpatterns, count_subpatterns

__all__ = [
    'compute_pattern', 'feasibility_matrix', 'is_feasible', 'interior_point',
    'equivalence_classes', 'pattern_geometry', 'class_anchor', 'normal_projection',
    'is_admissible', 'local_residual', 'complete_below', 'is_fixed_point',
    'iter_feasible_patterns', 'iter_subpatterns', 'count_subpatterns',
]
