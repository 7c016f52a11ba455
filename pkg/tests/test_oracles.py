"""
Tests for the verification oracles: grid search, pattern census and the
set-cover reduction.
"""
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from models import Norm, RegressionProblem, SetCoverInstance
from oracles import (
    count_bound, grid_oracle, has_binary_descent, has_cover, iter_instances, pattern_census,
    reduction_parameters, sampled_census, setcover_reduction, verify_reduction
)
from regression import solve_inf
from utils.error_handlers import CapExceededError, ValidationError


def instance(sets, n, k):
    return SetCoverInstance(tuple(frozenset(s) for s in sets), n, k)


class TestGrid:
    def test_ties_keep_smallest_point(self, small_a, flat_target):
        x, value = grid_oracle(RegressionProblem(small_a, flat_target), (-1.0, 1.0), 0.5)
        assert_array_equal(x, [0.0, 0.5])
        assert value == pytest.approx(1 / np.sqrt(2))

    def test_inf_norm(self, small_a, flat_target):
        problem = RegressionProblem(small_a, flat_target, Norm.INF)
        _, value = grid_oracle(problem, (-1.0, 1.0), 0.25)
        assert value == pytest.approx(0.5)

    def test_norm_override(self, small_a, flat_target):
        _, value = grid_oracle(RegressionProblem(small_a, flat_target), (-1.0, 1.0), 0.25, p="inf")
        assert value == pytest.approx(0.5)

    def test_per_axis_box(self, small_a, flat_target):
        x, _ = grid_oracle(RegressionProblem(small_a, flat_target), [(0.5, 1.0), (0.0, 0.0)], 0.5)
        assert_array_equal(x, [0.5, 0.0])

    def test_chunked_evaluation_matches_threads(self, rng):
        problem = RegressionProblem(rng.standard_normal((4, 3)), rng.standard_normal(4))
        serial = grid_oracle(problem, (-2.0, 2.0), 0.1, threads=1)
        parallel = grid_oracle(problem, (-2.0, 2.0), 0.1, threads=4)
        assert_array_equal(serial[0], parallel[0])
        assert serial[1] == parallel[1]

    def test_dimension_limit(self):
        with pytest.raises(ValidationError):
            grid_oracle(RegressionProblem(np.zeros((2, 5)), [0.0, 0.0]), (-1.0, 1.0), 0.5)

    def test_point_cap(self, small_a, flat_target):
        with pytest.raises(CapExceededError):
            grid_oracle(RegressionProblem(small_a, flat_target), (-1000.0, 1000.0), 1e-3)

    def test_bad_box(self, small_a, flat_target):
        with pytest.raises(ValidationError):
            grid_oracle(RegressionProblem(small_a, flat_target), (1.0, -1.0), 0.5)


class TestCensus:
    def test_small_example(self, small_a):
        report = pattern_census(small_a)
        assert report.total == 7
        assert sum(report.by_class_count.values()) == 7
        assert report.bound == {1: 3, 2: 2}
        assert report.bounded_by_class_count == {1: 3, 2: 2}
        assert len(report.patterns) == 7

    @pytest.mark.parametrize("n, d, k, expected", [
        (3, 2, 1, 3),
        (3, 2, 2, 2),
        (4, 3, 2, 12),
        (2, 2, 3, 0),
        (3, 3, 0, 0),
    ])
    def test_count_bound(self, n, d, k, expected):
        assert count_bound(n, d, k) == expected

    def test_general_position_meets_bound(self, rng):
        a = rng.standard_normal((4, 3))
        report = pattern_census(a, keep_patterns=False)
        assert report.bounded_by_class_count == report.bound
        assert report.bound == {1: 10, 2: 12, 3: 3}
        for k, count in report.bounded_by_class_count.items():
            assert count <= report.by_class_count[k]
        assert report.patterns == []

    def test_sampled_patterns_are_enumerated(self, rng):
        a = rng.standard_normal((4, 3))
        enumerated = set(pattern_census(a).patterns)
        sampled = sampled_census(a, samples=2000, seed=1)
        assert sampled <= enumerated
        assert len(sampled) > 1

    def test_size_cap(self):
        with pytest.raises(CapExceededError):
            pattern_census(np.zeros((10, 10)))


class TestSetCover:
    def test_parameters(self):
        a, b, c = reduction_parameters(instance([{0}, {1}, {0, 1}], 2, 1))
        assert a == pytest.approx(-0.25)
        assert b == 1.0
        assert c == pytest.approx(-1.25 * 9)

    def test_reduction_shape(self):
        A, y = setcover_reduction(instance([{0}, {1}, {0, 1}], 2, 1))
        assert A.shape == (2 + 3 + 3 + 1, 3)
        assert abs(y.sum()) < 1e-9
        assert set(np.unique(A.entries)) <= {0.0, -np.inf}

    def test_has_cover(self):
        assert has_cover(instance([{0}, {1}, {0, 1}], 2, 1))
        assert not has_cover(instance([{0}, {1}], 2, 1))

    def test_descent_matches_cover(self):
        for sets, n, k in [([{0}, {1}, {0, 1}], 2, 1), ([{0}, {1}], 2, 1), ([{0}, {1}, {2}], 3, 2)]:
            inst = instance(sets, n, k)
            A, y = setcover_reduction(inst)
            assert has_binary_descent(A, y) == has_cover(inst)

    def test_instances_cover_the_universe(self):
        for inst in iter_instances(2, 2):
            assert frozenset().union(*inst.family) == frozenset(range(2))
            assert 1 <= inst.k < 2

    def test_small_exhaustive_check(self):
        checked, mismatches = verify_reduction(3, 3)
        assert checked > 0
        assert mismatches == []

    @pytest.mark.slow
    def test_exhaustive_check(self):
        checked, mismatches = verify_reduction(5, 4)
        assert checked > 0
        assert mismatches == []

    def test_binary_descent_validation(self):
        with pytest.raises(ValidationError):
            has_binary_descent(np.array([[1.0]]), [0.0])
        with pytest.raises(ValidationError):
            has_binary_descent(np.array([[0.0]]), [1.0])
        with pytest.raises(CapExceededError):
            has_binary_descent(np.zeros((1, 21)), [0.0])

    def test_no_descent_for_zero_target(self):
        assert not has_binary_descent(np.zeros((2, 2)), [0.0, 0.0])

    def test_instance_validation(self):
        with pytest.raises(ValidationError):
            instance([{0}, {0}], 2, 1)
        with pytest.raises(ValidationError):
            instance([{0}, {1}], 2, 2)


def test_inf_norm_grid_close_to_closed_form(small_a, bent_target):
    problem = RegressionProblem(small_a, bent_target, Norm.INF)
    _, value = grid_oracle(problem, (-2.0, 2.0), 0.125)
    assert value == pytest.approx(solve_inf(problem).residual)
    assert_allclose(value, 0.25)
