"""
Tests for the regression solvers: ∞-norm closed form, Newton, steepest descent,
exhaustive search and IRSLS.
"""
import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import random_maxplus

from algebra import identity
from geometry import compute_pattern
from models import (
    DescentConfig, IrslsConfig, NewtonConfig, Norm, Pattern, RegressionProblem, SolveStatus, TropicalMatrix
)
from oracles import grid_oracle
from regression import (
    brute_force_exact, irsls, max_plus_convexity_gap, multistart_newton, newton_solve, newton_step,
    penalized_objective, principal_solution, residual, solve_inf, squared_residual, steepest_descent,
    subgradient
)
from regression.descent import flow
from utils.error_handlers import (
    CapExceededError, DimensionError, PatternError, SemiringMismatchError, ValidationError
)

NEG = -np.inf
OPTIMA = ([0.5, 0.0], [0.0, 0.5])
# Multistart Newton stays within (1 + NEWTON_GAP) of the global optimum on the
# seeded 5×3 standard normal family in test_newton_against_exact_search
# (generator seed 12345, 100 instances). 0.5 is an upper pin that was not
# measured; the test logs the worst observed excess ratio.
# TODO: lower NEWTON_GAP to the logged worst excess plus a 0.05 margin.
NEWTON_GAP = 0.5


def close_to_any(x, candidates, atol=1e-9):
    return any(np.allclose(x, c, atol=atol) for c in candidates)


class TestRegressionProblem:
    def test_validation(self, small_a):
        with pytest.raises(DimensionError):
            RegressionProblem(small_a, [1.0, 2.0])
        with pytest.raises(ValidationError):
            RegressionProblem(small_a, [1.0, np.inf, 0.0])
        with pytest.raises(ValidationError):
            RegressionProblem(TropicalMatrix.maxplus([[NEG, NEG], [0.0, 1.0]]), [0.0, 0.0])
        with pytest.raises(SemiringMismatchError):
            RegressionProblem(TropicalMatrix.minplus([[0.0]]), [0.0])

    def test_norm_from_string(self, small_a, flat_target):
        assert RegressionProblem(small_a, flat_target, "inf").norm is Norm.INF


class TestResidual:
    def test_inf_norm(self, small_a, flat_target):
        assert residual(small_a, [0.5, 0.5], flat_target, np.inf) == 0.5

    def test_two_norm(self, small_a, flat_target):
        assert residual(small_a, [0.5, 0.0], flat_target, 2) == pytest.approx(1 / np.sqrt(2))
        assert squared_residual(small_a, [0.5, 0.0], flat_target) == pytest.approx(0.25)

    def test_exact_fit(self, small_a):
        assert residual(small_a, [0.0, 0.0], [0.0, 1.0, 1.0]) == 0.0

    def test_unsupported_norm(self, small_a, flat_target):
        with pytest.raises(ValidationError):
            residual(small_a, [0.0, 0.0], flat_target, 1)

    def test_infinite_image(self):
        assert residual(TropicalMatrix.maxplus([[0.0, NEG]]), [NEG, 0.0], [0.0]) == np.inf


class TestInfNorm:
    def test_example(self, small_a, flat_target):
        solution = solve_inf(RegressionProblem(small_a, flat_target, Norm.INF))
        assert_allclose(solution.x, [0.5, 0.5], atol=1e-12)
        assert solution.residual == pytest.approx(0.5, abs=1e-12)
        assert solution.status is SolveStatus.OPTIMAL

    def test_identity(self, rng):
        y = rng.standard_normal(4)
        solution = solve_inf(RegressionProblem(identity(4), y, Norm.INF))
        assert_allclose(solution.x, y)
        assert solution.residual == 0.0

    def test_principal_solution_is_subsolution(self, rng):
        for _ in range(50):
            a = random_maxplus(rng, (5, 3), 0.3)
            y = rng.standard_normal(5)
            x_hat = principal_solution(a, y)
            image = np.max(a + x_hat[None, :], axis=1)
            assert np.all(image <= y + 1e-12)

    def test_matches_grid_search(self, rng):
        for _ in range(5):
            a = np.round(rng.uniform(-1, 1, (4, 2)), 1)
            y = np.round(rng.uniform(-1, 1, 4), 1)
            problem = RegressionProblem(a, y, Norm.INF)
            _, best = grid_oracle(problem, (-3.0, 3.0), 0.05, threads=1)
            assert solve_inf(problem).residual <= best + 1e-9

    def test_convexity_gap_is_non_negative(self, rng):
        for _ in range(200):
            n, d = rng.integers(1, 6, size=2)
            a = random_maxplus(rng, (n, d), 0.3)
            y = rng.standard_normal(n)
            x, z = rng.standard_normal(d), rng.standard_normal(d)
            weight = -abs(rng.standard_normal())
            lam, mu = (0.0, weight) if rng.random() < 0.5 else (weight, 0.0)
            assert max_plus_convexity_gap(a, y, x, z, lam, mu) >= -1e-9

    def test_convexity_gap_needs_normalized_weights(self, small_a, flat_target):
        with pytest.raises(ValidationError):
            max_plus_convexity_gap(small_a, flat_target, [0, 0], [0, 0], -1.0, -2.0)


class TestNewton:
    def test_step_from_inf_optimum(self, small_a, flat_target):
        assert_array_equal(newton_step(small_a, flat_target, [0.5, 0.5]), [0.5, 0.0])

    def test_step_on_bent_target(self, small_a, bent_target):
        assert_allclose(newton_step(small_a, bent_target, [0.0, 0.0]), [-0.25, -1.0])

    def test_fixed_point(self, small_a, bent_target):
        x = np.array([-0.25, -1.0])
        assert_allclose(newton_step(small_a, bent_target, x), x)

    @pytest.mark.filterwarnings("error")
    def test_stall_with_dropped_coordinate(self):
        A = TropicalMatrix.maxplus([[0.0, -10.0], [1.0, -10.0], [2.0, -10.0]])
        problem = RegressionProblem(A, [0.0, 1.0, 2.0])
        solution = newton_solve(problem, NewtonConfig(stall_window=3), x0=[0.0, NEG])
        assert_array_equal(solution.x, [0.0, NEG])
        assert solution.status is SolveStatus.LOCAL

    def test_unused_columns_keep_their_value(self):
        A = TropicalMatrix.maxplus([[0.0, -5.0], [0.0, -5.0]])
        assert_allclose(newton_step(A, [1.0, 3.0], [0.0, 0.0]), [2.0, 0.0])

    def test_needs_finite_rows(self):
        with pytest.raises(PatternError):
            newton_step(TropicalMatrix.maxplus([[0.0, NEG]]), [0.0], [NEG, 0.0])

    def test_converges_on_bent_target(self, small_a, bent_target):
        solution = newton_solve(RegressionProblem(small_a, bent_target), NewtonConfig(), [0.0, 0.0])
        assert_allclose(solution.x, [-0.25, -1.0])
        assert solution.residual ** 2 == pytest.approx(0.125)
        assert solution.status is SolveStatus.LOCAL

    def test_stall_window_bounds_iterations(self, small_a, bent_target):
        config = NewtonConfig(stall_window=5)
        solution = newton_solve(RegressionProblem(small_a, bent_target), config, [-0.25, -1.0])
        assert solution.iterations == 5
        assert_allclose(solution.x, [-0.25, -1.0])

    def test_iteration_cap(self, small_a, bent_target):
        config = NewtonConfig(mu=0.05, max_iter=3, stall_window=10)
        solution = newton_solve(RegressionProblem(small_a, bent_target), config, [3.0, 3.0])
        assert solution.status is SolveStatus.ITERATION_CAP
        assert solution.iterations == 3

    def test_trace(self, small_a, bent_target):
        config = NewtonConfig(record_trace=True)
        solution = newton_solve(RegressionProblem(small_a, bent_target), config, [0.0, 0.0])
        assert len(solution.trace) == solution.iterations + 1

    def test_multistart_example(self, small_a, flat_target):
        solution = multistart_newton(RegressionProblem(small_a, flat_target), NewtonConfig(threads=1))
        assert solution.residual == pytest.approx(1 / np.sqrt(2), abs=1e-9)
        assert close_to_any(solution.x, OPTIMA, atol=1e-6)

    def test_multistart_is_deterministic_across_threads(self, rng):
        problem = RegressionProblem(rng.standard_normal((6, 3)), rng.standard_normal(6))
        serial = multistart_newton(problem, NewtonConfig(seed=7, threads=1))
        parallel = multistart_newton(problem, NewtonConfig(seed=7, threads=4))
        assert_array_equal(serial.x, parallel.x)
        assert serial.residual == parallel.residual

    def test_config_validation(self):
        with pytest.raises(ValidationError):
            NewtonConfig(mu=0.0)
        with pytest.raises(ValidationError):
            NewtonConfig(starts=0)

    @pytest.mark.slow
    def test_newton_against_exact_search(self):
        rng = np.random.default_rng(12345)
        config = NewtonConfig(starts=10, mu=1.0, refine_mu=0.05, stall_window=5, threads=1)
        worst = 0.0
        for _ in range(100):
            problem = RegressionProblem(rng.standard_normal((5, 3)), rng.standard_normal(5))
            exact = brute_force_exact(problem).residual
            approx = multistart_newton(problem, config).residual
            assert approx >= exact - 1e-9
            assert approx <= (1 + NEWTON_GAP) * exact + 1e-12
            if exact > 0:
                worst = max(worst, approx / exact - 1.0)
        logging.getLogger(__name__).info(f"worst multistart excess over exact: {worst:.4f}")


class TestSteepestDescent:
    @pytest.mark.filterwarnings("error")
    def test_flow_keeps_dropped_coordinates(self):
        x = flow(np.array([0.0, NEG]), np.array([1.0, NEG]), np.array([1.0, 1.0]), np.log(2.0))
        assert_allclose(x[0], 0.5)
        assert x[1] == NEG

    def test_subgradient(self, small_a, bent_target):
        P3 = Pattern.from_lists([[0], [0], [1]], 2)
        gradient, admissible = subgradient(small_a, bent_target, [0.0, 0.0], P3)
        assert_allclose(gradient, [0.5, 1.0])
        assert admissible

    def test_subgradient_of_current_pattern_is_admissible(self, rng):
        for _ in range(50):
            a = rng.standard_normal((4, 3))
            x = rng.standard_normal(3)
            _, admissible = subgradient(a, rng.standard_normal(4), x, compute_pattern(a, x))
            assert admissible

    def test_reaches_local_minimum(self, small_a, bent_target):
        problem = RegressionProblem(small_a, bent_target)
        solution = steepest_descent(problem, [0.0, 0.0])
        assert solution.status is SolveStatus.LOCAL
        assert solution.residual <= residual(small_a, [0.0, 0.0], bent_target) + 1e-12
        assert solution.residual ** 2 == pytest.approx(0.125, abs=1e-9)

    def test_residual_decreases_along_path(self, rng):
        for _ in range(10):
            problem = RegressionProblem(rng.standard_normal((5, 3)), rng.standard_normal(5))
            solution = steepest_descent(problem, rng.standard_normal(3), DescentConfig(max_segments=100))
            values = [value for _, value in solution.trace]
            assert all(later <= earlier + 1e-9 for earlier, later in zip(values, values[1:]))

    def test_zero_gradient_start(self, small_a, bent_target):
        solution = steepest_descent(RegressionProblem(small_a, bent_target), [-0.25, -1.0])
        assert solution.iterations == 0
        assert_allclose(solution.x, [-0.25, -1.0])


class TestExhaustive:
    def test_flat_target(self, small_a, flat_target):
        solution = brute_force_exact(RegressionProblem(small_a, flat_target))
        assert solution.residual == pytest.approx(1 / np.sqrt(2), abs=1e-9)
        assert close_to_any(solution.x, OPTIMA)
        assert solution.status is SolveStatus.OPTIMAL

    def test_bent_target(self, small_a, bent_target):
        solution = brute_force_exact(RegressionProblem(small_a, bent_target))
        assert solution.residual ** 2 == pytest.approx(0.125, abs=1e-9)
        assert_allclose(solution.x, [-0.25, -1.0], atol=1e-9)

    def test_scalar(self):
        solution = brute_force_exact(RegressionProblem([[2.0]], [5.0]))
        assert_allclose(solution.x, [3.0])
        assert solution.residual == 0.0

    def test_never_worse_than_grid(self, rng):
        for _ in range(5):
            problem = RegressionProblem(rng.standard_normal((4, 2)), rng.standard_normal(4))
            _, best = grid_oracle(problem, (-4.0, 4.0), 0.05, threads=1)
            assert brute_force_exact(problem).residual <= best + 1e-9

    def test_never_worse_than_local_solvers_on_sparse_instances(self, rng):
        for _ in range(40):
            n, d = int(rng.integers(3, 7)), int(rng.integers(2, 4))
            a = random_maxplus(rng, (n, d), sparsity=0.3)
            # every column keeps a finite entry so the ∞-norm start is finite
            a[rng.integers(0, n, d), np.arange(d)] = rng.standard_normal(d)
            problem = RegressionProblem(a, rng.standard_normal(n))
            exact = brute_force_exact(problem).residual
            descent = steepest_descent(problem, solve_inf(problem).x)
            newton = multistart_newton(problem, NewtonConfig(starts=5, threads=1))
            assert exact <= descent.residual + 1e-9
            assert exact <= newton.residual + 1e-9

    def test_size_cap(self):
        problem = RegressionProblem(np.zeros((10, 6)), np.zeros(10))
        with pytest.raises(CapExceededError):
            brute_force_exact(problem)


class TestIrsls:
    def test_defaults(self):
        settings = IrslsConfig()
        assert settings.max_iter == 500
        assert settings.tol == 1e-10
        assert settings.newton.stall_window == 5
        assert settings.divergence_factor == 40.0

    def test_zero_penalty_keeps_a_fixed_point(self, small_a, bent_target):
        solution = irsls(small_a, bent_target, 0.0, [-0.25, -1.0])
        assert_allclose(solution.x, [-0.25, -1.0], atol=1e-9)
        assert solution.status is SolveStatus.LOCAL

    def test_unsupported_column_goes_to_minus_infinity(self):
        # column 1 never attains a row maximum near the fit
        A = TropicalMatrix.maxplus([[0.0, -10.0], [1.0, -10.0], [2.0, -10.0]])
        y = np.array([0.0, 1.0, 2.0])
        solution = irsls(A, y, 1.0, [0.0, 0.0])
        assert solution.x[1] == NEG
        assert np.isfinite(solution.x[0])
        assert solution.objective == pytest.approx(penalized_objective(A, solution.x, y, 1.0))

    def test_last_column_of_a_row_is_kept(self):
        A = TropicalMatrix.maxplus([[0.0]])
        solution = irsls(A, [0.0], 1.0, [0.0], IrslsConfig(max_iter=20))
        assert np.isfinite(solution.x[0])

    def test_penalty_validation(self, small_a, bent_target):
        with pytest.raises(ValidationError):
            irsls(small_a, bent_target, -1.0, [0.0, 0.0])
        with pytest.raises(ValidationError):
            irsls(small_a, bent_target, 1.0, [NEG, 0.0])

    def test_penalized_objective(self, small_a, flat_target):
        value = penalized_objective(small_a, [0.5, 0.0], flat_target, 2.0)
        assert value == pytest.approx(0.5 + 1.0)
