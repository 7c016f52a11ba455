"""
Tests for system identification, network model reduction and polynomial fitting.
"""
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

import config
from applications import (
    build_design, check_distance_matrix, evidence_matrix, feature_table, frob_residual,
    largest_component, load_dolphins, loglik, network_reduce, poly_eval, poly_fit, poly_residual,
    predictions, quadratic_bowl_protocol, row_residuals, shortest_paths, simulate_orbit, sysid_fit,
    univariate_protocol
)
from factorization import minplus_product
from models import (
    FactorizationConfig, IrslsConfig, NewtonConfig, TropicalPolynomial, RegressionProblem, TimeSeries
)
from regression import residual, solve_inf
from utils.error_handlers import DimensionError, ValidationError

NEG = -np.inf


class TestSimulation:
    def test_deterministic_orbit(self):
        series = simulate_orbit([[2.0]], [0.0], 3)
        assert_array_equal(series.X, [[0.0, 2.0, 4.0, 6.0]])

    def test_orbit_of_system_matrix(self, system_matrix):
        series = simulate_orbit(system_matrix, np.zeros(4), 2)
        assert_array_equal(series.X[:, 1], [15.0, 14.0, 14.0, 15.0])
        assert series.steps == 2

    def test_noise_is_seeded(self, system_matrix):
        first = simulate_orbit(system_matrix, np.zeros(4), 10, sigma=1.0, seed=5)
        second = simulate_orbit(system_matrix, np.zeros(4), 10, sigma=1.0, seed=5)
        assert_array_equal(first.X, second.X)

    def test_validation(self):
        with pytest.raises(DimensionError):
            simulate_orbit([[1.0, 2.0]], [0.0, 0.0], 3)
        with pytest.raises(ValidationError):
            simulate_orbit([[NEG, NEG], [0.0, 0.0]], [0.0, 0.0], 3)
        with pytest.raises(ValidationError):
            simulate_orbit([[1.0]], [0.0], 0)


class TestDiagnostics:
    def test_residuals_of_generating_matrix(self):
        series = TimeSeries([[0.0, 2.0, 5.0]])
        assert_array_equal(predictions([[2.0]], series), [[2.0, 4.0]])
        assert_array_equal(row_residuals([[2.0]], series), [1.0])
        assert frob_residual([[2.0]], series) == 1.0

    def test_loglik(self):
        series = TimeSeries([[0.0, 2.0, 5.0]])
        expected = -0.5 * 2 * np.log(2.0 * np.pi * 4.0) - 1.0 / 8.0
        assert loglik([[2.0]], series, 2.0) == pytest.approx(expected)
        with pytest.raises(ValidationError):
            loglik([[2.0]], series, 0.0)

    def test_evidence_counts_ties(self):
        series = TimeSeries([[0.0, 1.0, 0.0], [0.0, 0.0, 0.0]])
        S = evidence_matrix([[0.0, 0.0], [0.0, NEG]], series)
        # row 0: n=0 ties, n=1 column 0 wins; row 1 only has column 0
        assert_array_equal(S, [[2, 1], [2, 0]])

    def test_dimension_mismatch(self, system_matrix):
        with pytest.raises(DimensionError):
            predictions(system_matrix, TimeSeries([[0.0, 1.0]]))


class TestSysId:
    def test_noise_free_scalar(self):
        series = simulate_orbit([[2.0]], [0.0], 3)
        result = sysid_fit(series, config=IrslsConfig(newton=NewtonConfig(threads=1)))
        assert_allclose(result.A_hat.entries, [[2.0]])
        assert result.frob_residual_sq == pytest.approx(0.0, abs=1e-18)
        assert_array_equal(result.evidence, [[3]])
        assert result.loglik is None

    def test_loglik_reported_with_sigma(self, system_matrix):
        series = simulate_orbit(system_matrix, np.zeros(4), 30, sigma=1.0, seed=1)
        result = sysid_fit(series, config=IrslsConfig(newton=NewtonConfig(threads=1)), sigma=1.0)
        assert result.loglik == pytest.approx(loglik(result.A_hat, series, 1.0))
        assert_allclose(result.row_residuals_sq.sum(), result.frob_residual_sq)

    def test_thread_count_does_not_change_fit(self, system_matrix):
        series = simulate_orbit(system_matrix, np.zeros(4), 30, sigma=1.0, seed=2)
        serial = sysid_fit(series, config=IrslsConfig(newton=NewtonConfig(threads=1)))
        parallel = sysid_fit(series, config=IrslsConfig(newton=NewtonConfig(threads=4)))
        assert_array_equal(serial.A_hat.entries, parallel.A_hat.entries)

    def test_negative_lambda(self):
        with pytest.raises(ValidationError):
            sysid_fit(TimeSeries([[0.0, 1.0]]), lam=-1.0)

    @pytest.mark.slow
    @pytest.mark.parametrize("sigma", [1.0, 5.0])
    def test_fit_beats_generating_matrix(self, system_matrix, sigma):
        wins = 0
        for seed in range(10):
            series = simulate_orbit(system_matrix, np.zeros(4), 200, sigma=sigma, seed=seed)
            fitted = sysid_fit(series, config=IrslsConfig(newton=NewtonConfig(threads=1)))
            if fitted.frob_residual_sq <= 1.02 * frob_residual(system_matrix, series):
                wins += 1
        assert wins >= 9

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(5))
    def test_penalty_removes_unsupported_coefficients(self, system_matrix, seed):
        series = simulate_orbit(system_matrix, np.zeros(4), 200, sigma=1.0, seed=seed)
        fits = {
            lam: sysid_fit(series, lam=lam, config=IrslsConfig(newton=NewtonConfig(threads=1)))
            for lam in (0.0, 1.0, 10.0)
        }
        unsupported = fits[0.0].evidence == 0
        penalized = fits[10.0].A_hat.entries
        assert np.isneginf(penalized[unsupported]).all()
        assert np.isneginf(penalized).any()
        assert np.isfinite(penalized).any(axis=1).all()

        # a heavier penalty never fits better
        residuals = [fits[lam].frob_residual_sq for lam in (0.0, 1.0, 10.0)]
        assert residuals[0] <= residuals[1] * (1 + 1e-9)
        assert residuals[1] <= residuals[2] * (1 + 1e-9)


class TestNetworks:
    def test_path_graph(self):
        D = shortest_paths([(0, 1, 1.0), (1, 2, 1.0)], 3)
        assert D.entries[0, 2] == 2.0
        assert_array_equal(np.diag(D.entries), 0.0)

    def test_single_vertex(self):
        assert_array_equal(shortest_paths([], 1).entries, [[0.0]])

    def test_disconnected_pair_is_infinite(self):
        assert shortest_paths([], 2).entries[0, 1] == np.inf

    def test_negative_weight(self):
        with pytest.raises(ValidationError):
            shortest_paths([(0, 1, -1.0)], 2)

    def test_largest_component(self):
        edges, kept = largest_component([(0, 1, 1.0), (2, 3, 1.0), (3, 4, 2.0)], 5)
        assert kept == [2, 3, 4]
        assert edges == [(0, 1, 1.0), (1, 2, 2.0)]

    def test_check_distance_matrix(self):
        with pytest.raises(DimensionError):
            check_distance_matrix(np.zeros((2, 3)))
        with pytest.raises(ValidationError):
            check_distance_matrix([[0.0, np.inf], [np.inf, 0.0]])
        with pytest.raises(ValidationError):
            check_distance_matrix([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(ValidationError):
            check_distance_matrix([[1.0, 1.0], [1.0, 0.0]])

    def test_exact_hub_model(self, rng):
        a = rng.uniform(0.5, 4.0, (6, 2))
        D = minplus_product(a, a.T)
        np.fill_diagonal(D, 0.0)
        result = network_reduce(D, 2, FactorizationConfig(threads=1), initial=a)
        assert result.residual_sq == pytest.approx(0.0, abs=1e-9)
        assert result.symmetric

    def test_feature_table(self):
        rows = feature_table(np.array([[0.0, 3.0], [2.0, 1.0]]))
        assert rows == [[0, 0.0, 3.0, 0], [1, 2.0, 1.0, 1]]

    def test_missing_dolphin_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_dolphins(str(tmp_path / "dolphins.txt"))

    def test_edge_list_file(self, tmp_path):
        path = tmp_path / "graph.txt"
        path.write_text("0 1\n1 2\n# isolated pair\n3 4\n")
        D = load_dolphins(str(path))
        assert D.shape == (3, 3)
        assert D.entries[0, 2] == 2.0

    def test_rank_three_hubs_of_social_graph(self, social_graph_file):
        D = load_dolphins(social_graph_file)
        assert D.shape == (62, 62)
        assert_array_equal(D.entries, np.round(D.entries))
        result = network_reduce(D, 3, FactorizationConfig(max_iter=200, threads=1))
        assert result.A.shape == (62, 3)
        assert np.isfinite(result.residual_sq)
        rows = feature_table(result.A)
        assert len(rows) == 62
        assert {row[-1] for row in rows} <= {0, 1, 2}

    def test_default_dolphin_path_is_configurable(self, social_graph_file, monkeypatch):
        monkeypatch.setattr(config, "DOLPHINS_FILE", social_graph_file)
        assert load_dolphins().shape == (62, 62)

    @pytest.mark.skipif(not os.path.exists(config.DOLPHINS_FILE), reason="dolphin edge list not installed")
    def test_dolphins(self):
        D = load_dolphins()
        assert D.shape == (62, 62)
        result = network_reduce(D, 3, FactorizationConfig(max_iter=200, threads=1))
        assert result.A.shape == (62, 3)


class TestPolynomials:
    def test_design(self):
        X = build_design([1.0, 2.0], [0.0, 1.0, 2.0])
        assert_array_equal(X.entries, [[0.0, 1.0, 2.0], [0.0, 2.0, 4.0]])

    def test_design_variable_mismatch(self):
        with pytest.raises(DimensionError):
            build_design(np.zeros((3, 2)), [0.0, 1.0])

    def test_eval(self):
        poly = TropicalPolynomial([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
        assert poly_eval(poly, 0.0) == 1.0
        assert poly_eval(poly, 3.0) == 6.0
        assert poly_eval(poly, -2.0) == 0.0

    def test_exact_fit(self):
        poly = TropicalPolynomial([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
        points = np.linspace(-3.0, 3.0, 13)
        y = np.array([poly_eval(poly, p) for p in points])
        fitted = poly_fit(points, y, poly.S, NewtonConfig(threads=1))
        assert poly_residual(fitted, points, y) == pytest.approx(0.0, abs=1e-9)

    def test_protocol_is_seeded(self):
        first = univariate_protocol(seed=3)
        second = univariate_protocol(seed=3)
        assert_array_equal(first.y, second.y)
        assert first.points.shape == (20, 1)

    def test_quadratic_bowl(self):
        protocol = quadratic_bowl_protocol(seed=0)
        fitted = poly_fit(protocol.points, protocol.y, protocol.S, NewtonConfig(threads=1))
        design = build_design(protocol.points, protocol.S)
        start = solve_inf(RegressionProblem(design, protocol.y)).x
        assert fitted.k == 5
        assert poly_residual(fitted, protocol.points, protocol.y) <= residual(design, start, protocol.y, 2) + 1e-9

    @pytest.mark.slow
    def test_fit_beats_true_coefficients(self):
        wins = 0
        for seed in range(10):
            protocol = univariate_protocol(seed=seed)
            fitted = poly_fit(protocol.points, protocol.y, protocol.S, NewtonConfig(threads=1))
            truth = poly_residual(protocol.truth, protocol.points, protocol.y)
            if poly_residual(fitted, protocol.points, protocol.y) <= truth + 1e-9:
                wins += 1
        assert wins >= 9
