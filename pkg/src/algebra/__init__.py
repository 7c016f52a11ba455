"""
Max-plus / min-plus arithmetic, cycle means, Kleene star and shortest-path closure.
"""
from algebra.semiring import (
    identity, tmul, tadd, tscale, tpow, negate_iso, vstack, maxplus_entries, mp_matvec
)
from algebra.cycles import (
    max_cycle_mean, min_cycle_mean, kleene_star, row_mean, minplus_closure
)

__all__ = [
    'identity', 'tmul', 'tadd', 'tscale', 'tpow', 'negate_iso', 'vstack',
    'maxplus_entries', 'mp_matvec',
    'max_cycle_mean', 'min_cycle_mean', 'kleene_star', 'row_mean', 'minplus_closure',
]
