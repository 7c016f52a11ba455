"""
Edge-length inference and min-plus model order reduction of networks.

A distance matrix D is approximated by A ⊠ Aᵀ, i.e. d_ij ≈ min_k (a_ik + a_jk):
column k of A holds the distances of every vertex to a hub k, and the row of
a vertex is its latent feature vector.
"""
import logging
import os
from typing import List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

import config
from algebra.cycles import minplus_closure
from factorization.symmetric import neighborhood_labels, symmetric_factorize
from fileio.tables import Edge, read_edge_list
from models import Semiring
from models.factorization import FactorizationConfig, FactorizationResult
from models.tropical_matrix import TropicalMatrix
from utils.error_handlers import DimensionError, ValidationError

logger = logging.getLogger(__name__)

ZERO_DIAGONAL_TOL = 1e-12


def _weight_matrix(edges: Sequence[Edge], n: int) -> np.ndarray:
    if n < 1:
        raise ValidationError("a graph needs at least one vertex", field="n")
    W = np.full((n, n), np.inf)
    np.fill_diagonal(W, 0.0)
    for u, v, w in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(f"edge ({u}, {v}) refers to a vertex outside 0..{n - 1}", field="edges")
        if w < 0:
            raise ValidationError(f"edge ({u}, {v}) has negative weight {w}", field="edges")
        if u != v:
            W[u, v] = W[v, u] = min(W[u, v], w)
    return W


def shortest_paths(edges: Sequence[Edge], n: int) -> TropicalMatrix:
    """
    Pairwise shortest-path lengths of an undirected weighted graph.

    Args:
        edges: (u, v, w) triples, 0-based, w >= 0.
        n: Number of vertices.

    Returns:
        n×n min-plus matrix with zero diagonal; unreachable pairs are +∞.
    """
    closure = minplus_closure(TropicalMatrix(_weight_matrix(edges, n), Semiring.MIN_PLUS))
    logger.debug(f"shortest_paths: {n} vertices, {len(edges)} edges")
    return closure


def largest_component(edges: Sequence[Edge], n: int) -> Tuple[List[Edge], List[int]]:
    """
    Restrict a graph to its largest connected component.

    Returns:
        (edges relabeled to 0..size−1, original ids of the kept vertices in order).
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((u, v) for u, v, _ in edges)
    kept = sorted(max(nx.connected_components(graph), key=lambda c: (len(c), -min(c))))
    relabel = {old: new for new, old in enumerate(kept)}
    sub_edges = [(relabel[u], relabel[v], w) for u, v, w in edges if u in relabel and v in relabel]
    if len(kept) < n:
        logger.warning(f"graph is disconnected: keeping {len(kept)} of {n} vertices")
    return sub_edges, kept


def check_distance_matrix(D) -> np.ndarray:
    """
    Validate a distance matrix for model reduction.

    Raises:
        ValidationError: Unless D is finite, square, symmetric with zero diagonal.
    """
    d = D.entries if isinstance(D, TropicalMatrix) else np.asarray(D, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise DimensionError(f"distance matrix must be square, got shape {d.shape}")
    if not np.all(np.isfinite(d)):
        raise ValidationError(
            "distance matrix has infinite entries",
            field="D",
            details="restrict the graph to its largest connected component",
        )
    if np.max(np.abs(d - d.T)) > ZERO_DIAGONAL_TOL:
        raise ValidationError("distance matrix must be symmetric", field="D")
    if np.max(np.abs(np.diag(d))) > ZERO_DIAGONAL_TOL:
        raise ValidationError("distance matrix must have a zero diagonal", field="D")
    return d


def network_reduce(D, d: int, config: Optional[FactorizationConfig] = None,
                   initial=None) -> FactorizationResult:
    """
    Rank-d hub model D ≈ A ⊠ Aᵀ fitted on the off-diagonal entries.

    Args:
        D: Finite symmetric distance matrix with zero diagonal.
        d: Number of hubs.
        config: Factorization settings.
        initial: Optional starting factor.

    Returns:
        The symmetric factorization; rows of A are per-vertex features.
    """
    distances = check_distance_matrix(D)
    return symmetric_factorize(
        TropicalMatrix.minplus(distances), d, include_diagonal=False, config=config, initial=initial
    )


def feature_table(A) -> List[list]:
    """
    Plot-ready rows (vertex id, latent coordinates..., closest hub label).
    """
    a = A.entries if isinstance(A, TropicalMatrix) else np.asarray(A, dtype=float)
    labels = neighborhood_labels(a)
    return [[vertex] + [float(v) for v in a[vertex]] + [int(labels[vertex])] for vertex in range(a.shape[0])]


def load_dolphins(path: Optional[str] = None) -> TropicalMatrix:
    """
    Distance matrix of the dolphin social network from its edge list
    (unit weights).

    Raises:
        FileNotFoundError: If the edge list is not present.
    """
    path = path or config.DOLPHINS_FILE
    if not os.path.exists(path):
        raise FileNotFoundError(f"dolphin edge list not found: {path}")
    edges, n = read_edge_list(path)
    edges, kept = largest_component([(u, v, 1.0) for u, v, _ in edges], n)
    return shortest_paths(edges, len(kept))
