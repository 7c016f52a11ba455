"""
Shared fixtures: import paths, quiet logging and the small worked examples
used across the suite.
"""
import os
import sys

import numpy as np
import pytest

# No log file during tests
os.environ["TROPREG_LOG_FILE"] = ""

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
sys.path.insert(0, ROOT)
sys.path.insert(0, os.path.join(ROOT, "src"))

from models import TropicalMatrix  # noqa: E402


@pytest.fixture
def small_a():
    """3×2 matrix whose two-variable regression has seven feasible patterns."""
    return TropicalMatrix.maxplus([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


@pytest.fixture
def flat_target():
    return np.array([1.0, 1.0, 1.0])


@pytest.fixture
def bent_target():
    return np.array([0.0, 0.5, 0.0])


@pytest.fixture
def system_matrix():
    """4×4 max-plus system used by the identification protocol."""
    return TropicalMatrix.maxplus([
        [7.0, 15.0, 10.0, -np.inf],
        [14.0, -np.inf, 11.0, 11.0],
        [14.0, -np.inf, -np.inf, -np.inf],
        [15.0, 8.0, 7.0, 9.0],
    ])


@pytest.fixture
def tripartite_c():
    """Noisy observation of a 5×5 rank-2 min-plus product."""
    return TropicalMatrix.minplus([
        [3.59, 6.07, 12.5, 10.2, 3.57],
        [3.42, 2.75, 10.8, 11.0, 3.21],
        [11.8, 10.3, 15.4, 9.74, 10.6],
        [5.91, 8.62, 11.9, 9.7, 9.77],
        [3.98, 8.04, 14.5, 10.2, 6.39],
    ])


@pytest.fixture
def bipartite_c():
    """Noisy observation of M ⊠ Mᵀ for a 5×2 M; not exactly symmetric."""
    return TropicalMatrix.minplus([
        [0.0, 7.53, 9.87, 11.0, 11.0],
        [7.93, 0.0, 9.03, 10.6, 10.2],
        [9.12, 9.75, 0.0, 3.66, 8.86],
        [10.6, 10.3, 3.44, 0.0, 9.07],
        [11.5, 10.2, 8.07, 9.48, 0.0],
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def random_maxplus(rng, shape, sparsity=0.0):
    """Standard normal entries, a fraction set to −∞ (each row keeps one finite entry)."""
    values = rng.standard_normal(shape)
    if sparsity > 0:
        mask = rng.random(shape) < sparsity
        mask[np.arange(shape[0]), rng.integers(0, shape[1], shape[0])] = False
        values[mask] = -np.inf
    return values


@pytest.fixture
def social_graph_file(tmp_path):
    """Edge list of a connected 62-vertex small-world graph (unit weights)."""
    import networkx as nx

    graph = nx.connected_watts_strogatz_graph(62, 6, 0.1, seed=7)
    path = tmp_path / "social.txt"
    path.write_text("".join(f"{u} {v}\n" for u, v in sorted(graph.edges())))
    return str(path)
