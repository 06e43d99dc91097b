"""Graph-aware feature preprocessing for the graph-agnostic model variants."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp


def _binary_adjacency(rows: np.ndarray, cols: np.ndarray,
                      num_nodes: int) -> sp.csr_matrix:
    data = np.ones(len(rows), dtype=np.float64)
    adj = sp.coo_matrix((data, (rows, cols)), shape=(num_nodes, num_nodes)).tocsr()
    adj.data[:] = 1.0  # collapse any accidental parallel arcs
    return adj


def sgc_precompute(features: np.ndarray, edge_src: np.ndarray,
                   edge_dst: np.ndarray, num_nodes: int, power: int) -> np.ndarray:
    """Smooth features by k applications of the self-loop-normalized adjacency.

    Computes A_hat^k X with A_hat = D^{-1/2} (A + I) D^{-1/2}, where D is the
    degree matrix of A + I. Row v aggregates over arcs u -> v, so undirected
    inputs (both orientations present) see the usual symmetric smoothing.
    """
    if power < 0:
        raise ValueError(f"power must be >= 0, got {power}")
    result = np.asarray(features, dtype=np.float64)
    if power == 0:
        return result.copy()
    adj = (_binary_adjacency(edge_dst, edge_src, num_nodes)
           + sp.eye(num_nodes, format="csr"))
    inv_sqrt_degree = 1.0 / np.sqrt(np.asarray(adj.sum(axis=1)).ravel())
    normalized = sp.diags(inv_sqrt_degree) @ adj @ sp.diags(inv_sqrt_degree)
    for _ in range(power):
        result = normalized @ result
    return result


def adjacency_augment(features: np.ndarray, edge_src: np.ndarray,
                      edge_dst: np.ndarray, num_nodes: int) -> np.ndarray:
    """Append each node's binary adjacency row to its feature vector.

    Output width is F + num_nodes; the appended block's row sums equal the
    node (out-)degrees.
    """
    block = np.asarray(_binary_adjacency(edge_src, edge_dst, num_nodes).todense())
    return np.concatenate([np.asarray(features, dtype=np.float64), block], axis=1)
