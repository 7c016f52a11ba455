"""
Independent oracles for cycle means and closures, built on networkx and
scipy graph routines rather than on the semiring code they check.
"""
import logging

import networkx as nx
import numpy as np
from scipy.sparse.csgraph import NegativeCycleError as CsgraphNegativeCycle
from scipy.sparse.csgraph import csgraph_from_dense, shortest_path

from algebra.semiring import maxplus_entries
from models import Semiring
from models.tropical_matrix import CycleMean, TropicalMatrix
from utils.error_handlers import DimensionError, NegativeCycleError, SemiringMismatchError

logger = logging.getLogger(__name__)


def cycle_mean_bruteforce(B) -> CycleMean:
    """
    Maximum cycle mean by enumerating every elementary cycle of the digraph
    with an edge j → i wherever b_ij is finite.

    Exponential in general; meant for small matrices.
    """
    b = maxplus_entries(B)
    if b.shape[0] != b.shape[1]:
        raise DimensionError(f"cycle mean needs a square matrix, got {b.shape}")
    graph = nx.DiGraph()
    graph.add_nodes_from(range(b.shape[0]))
    rows, cols = np.nonzero(np.isfinite(b))
    graph.add_edges_from(zip(cols.tolist(), rows.tolist()))

    best, best_cycle = -np.inf, ()
    for cycle in nx.simple_cycles(graph):
        weight = sum(b[cycle[(k + 1) % len(cycle)], cycle[k]] for k in range(len(cycle)))
        mean = weight / len(cycle)
        if mean > best:
            best, best_cycle = mean, tuple(cycle)
    return CycleMean(float(best), Semiring.MAX_PLUS, best_cycle)


def bellman_ford_closure(W: TropicalMatrix) -> TropicalMatrix:
    """
    All-pairs shortest paths of a min-plus weight matrix by Bellman-Ford.

    Raises:
        NegativeCycleError: If W has a negative cycle.
    """
    if W.semiring is not Semiring.MIN_PLUS:
        raise SemiringMismatchError("bellman_ford_closure expects a min-plus matrix")
    if not W.is_square:
        raise DimensionError(f"closure needs a square matrix, got {W.shape}")
    w = W.to_array()
    if np.any(np.diag(w) < 0):
        raise NegativeCycleError("negative self-loop")
    # csgraph reads w_ij as an edge i -> j; zero weights must survive the sparse conversion
    graph = csgraph_from_dense(w, null_value=np.inf)
    try:
        distances = shortest_path(graph, method="BF", directed=True)
    except CsgraphNegativeCycle as e:
        raise NegativeCycleError("negative cycle detected", details=str(e)) from e
    return TropicalMatrix(distances, Semiring.MIN_PLUS)


def star_oracle(B: TropicalMatrix) -> TropicalMatrix:
    """Kleene star of a max-plus matrix through Bellman-Ford on −B."""
    closure = bellman_ford_closure(TropicalMatrix(-B.to_array(), Semiring.MIN_PLUS))
    return TropicalMatrix.maxplus(-closure.to_array())
