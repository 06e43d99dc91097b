"""Graph and label statistics: homophily measures, label informativeness,
clustering coefficients, diameter, and the combined per-dataset report.

Every metric operates on the undirected view; directed graphs are
symmetrized first so there is exactly one documented convention. Homophily
ratios are accumulated in exact integer arithmetic with a single final
division, which keeps rational-valued results (e.g. -1/2) bit-exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import log
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from ._bfs import eccentricities
from .errors import ValidationError
from .graph import Dataset, Graph, symmetrize


def _undirected(graph: Graph) -> Graph:
    return symmetrize(graph) if graph.directed else graph


def _arc_labels(graph: Graph, labels: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    src, dst = graph.arcs()
    return labels[src], labels[dst]


def _check_labels(graph: Graph, labels: np.ndarray) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.int64)
    if len(labels) != graph.num_nodes:
        raise ValidationError(
            f"labels length {len(labels)} != num_nodes {graph.num_nodes}")
    if len(labels) and labels.min() < 0:
        raise ValidationError("labels must be non-negative class indices")
    return labels


def edge_homophily(graph: Graph, labels: np.ndarray) -> float:
    """Fraction of edges whose endpoints share a class."""
    labels = _check_labels(graph, labels)
    g = _undirected(graph)
    if g.num_edges == 0:
        raise ValidationError("edge_homophily is undefined on an edgeless graph")
    ys, yd = _arc_labels(g, labels)
    same_arcs = int(np.count_nonzero(ys == yd))
    return same_arcs / (2 * g.num_edges)


def node_homophily(graph: Graph, labels: np.ndarray) -> float:
    """Mean over non-isolated nodes of the same-class neighbor fraction."""
    labels = _check_labels(graph, labels)
    g = _undirected(graph)
    deg = g.degrees
    if not np.any(deg > 0):
        raise ValidationError("node_homophily is undefined when every node is isolated")
    src, dst = g.arcs()
    same = np.bincount(src[labels[src] == labels[dst]], minlength=g.num_nodes)
    active = deg > 0
    return float(np.mean(same[active] / deg[active]))


def _degree_mass(g: Graph, labels: np.ndarray) -> np.ndarray:
    mass = np.zeros(int(labels.max()) + 1 if len(labels) else 1, dtype=np.int64)
    np.add.at(mass, labels, g.degrees)
    return mass


def adjusted_homophily(graph: Graph, labels: np.ndarray) -> float:
    """Edge homophily corrected by its degree-weighted expected value.

    With sa = same-class arcs, ta = total arcs (2|E|) and S = sum of squared
    per-class degree masses, the value is (sa*ta - S) / (ta^2 - S): the same
    ratio as (h_edge - S/ta^2) / (1 - S/ta^2) but evaluated exactly.
    """
    labels = _check_labels(graph, labels)
    g = _undirected(graph)
    if g.num_edges == 0:
        raise ValidationError("adjusted_homophily is undefined on an edgeless graph")
    ys, yd = _arc_labels(g, labels)
    same_arcs = int(np.count_nonzero(ys == yd))
    total_arcs = 2 * g.num_edges
    mass_sq = int(sum(int(m) ** 2 for m in _degree_mass(g, labels)))
    denominator = total_arcs * total_arcs - mass_sq
    if denominator == 0:
        raise ValidationError(
            "adjusted_homophily is undefined: all edge mass lies in one class")
    return (same_arcs * total_arcs - mass_sq) / denominator


def label_informativeness(graph: Graph, labels: np.ndarray) -> float:
    """Normalized mutual information of the endpoint labels of a random edge.

    The edge is sampled uniformly and counted in both orientations, so the
    marginal is the degree-weighted class distribution. Natural logarithms;
    0*log(0) = 0. The ratio is invariant to the log base.
    """
    labels = _check_labels(graph, labels)
    g = _undirected(graph)
    if g.num_edges == 0:
        raise ValidationError("label_informativeness is undefined on an edgeless graph")
    num_classes = int(labels.max()) + 1
    ys, yd = _arc_labels(g, labels)
    total_arcs = 2 * g.num_edges

    joint = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(joint, (ys, yd), 1)
    marginal = _degree_mass(g, labels) / total_arcs

    entropy = -sum(p * log(p) for p in marginal if p > 0.0)
    if entropy == 0.0:
        raise ValidationError(
            "label_informativeness is undefined: all edge mass lies in one class")
    mutual = 0.0
    for c1 in range(num_classes):
        for c2 in range(num_classes):
            if joint[c1, c2]:
                p = joint[c1, c2] / total_arcs
                mutual += p * log(p / (marginal[c1] * marginal[c2]))
    # mutual information is non-negative; rounding may leave tiny negatives
    return max(mutual, 0.0) / entropy


def _adjacency(g: Graph) -> sp.csr_matrix:
    return sp.csr_matrix(
        (np.ones(len(g.out_indices), dtype=np.int64), g.out_indices, g.out_indptr),
        shape=(g.num_nodes, g.num_nodes))


def _triangles_per_node(g: Graph, block: int = 4096) -> np.ndarray:
    """Triangle count through each node via (A @ A) masked by A, in row blocks."""
    adj = _adjacency(g)
    triangles = np.zeros(g.num_nodes, dtype=np.int64)
    for start in range(0, g.num_nodes, block):
        stop = min(start + block, g.num_nodes)
        paths = adj[start:stop] @ adj
        closed = paths.multiply(adj[start:stop])
        triangles[start:stop] = np.asarray(closed.sum(axis=1)).ravel() // 2
    return triangles


def global_clustering(graph: Graph) -> float:
    """Transitivity: 3 * triangles / wedges."""
    g = _undirected(graph)
    deg = g.degrees.astype(np.int64)
    wedges = int((deg * (deg - 1) // 2).sum())
    if wedges == 0:
        raise ValidationError("global_clustering is undefined without a single wedge")
    triangles = int(_triangles_per_node(g).sum()) // 3
    return 3 * triangles / wedges


def avg_local_clustering(graph: Graph) -> float:
    """Mean over all nodes of the local coefficient; nodes of degree < 2 count 0."""
    g = _undirected(graph)
    if g.num_nodes == 0:
        raise ValidationError("avg_local_clustering is undefined on an empty graph")
    deg = g.degrees.astype(np.int64)
    triangles = _triangles_per_node(g)
    coeff = np.zeros(g.num_nodes, dtype=np.float64)
    eligible = deg >= 2
    pairs = deg[eligible] * (deg[eligible] - 1) / 2
    coeff[eligible] = triangles[eligible] / pairs
    return float(coeff.mean())


def connected_components(graph: Graph) -> np.ndarray:
    g = _undirected(graph)
    _, membership = csgraph.connected_components(_adjacency(g), directed=False)
    return membership


def diameter(graph: Graph) -> int:
    """Exact diameter (max eccentricity) of the largest connected component.

    Runs a BFS from every node of that component. Warns when the graph is
    disconnected, since the value then describes only the largest component.
    """
    g = _undirected(graph)
    if g.num_nodes == 0:
        raise ValidationError("diameter is undefined on an empty graph")
    membership = connected_components(g)
    counts = np.bincount(membership)
    largest = int(np.argmax(counts))
    if len(counts) > 1:
        warnings.warn(
            f"graph is disconnected ({len(counts)} components); "
            "diameter refers to the largest component", stacklevel=2)
    sources = np.flatnonzero(membership == largest).astype(np.int64)
    ecc = eccentricities(g.out_indptr.astype(np.int64),
                         g.out_indices.astype(np.int64), sources)
    return int(ecc.max())


@dataclass(frozen=True)
class StatReport:
    """The statistics bundle reported for one dataset.

    ``num_edges`` and ``avg_degree`` describe the undirected view, the
    common footing on which all label metrics are defined.
    """

    name: str
    num_nodes: int
    num_edges: int
    avg_degree: float
    global_clustering: float
    avg_local_clustering: float
    diameter: int
    feature_dim: int
    num_classes: int
    edge_homophily: float
    adjusted_homophily: float
    label_informativeness: float
    class_counts: tuple[int, ...]
    connected: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "nodes": self.num_nodes,
            "edges": self.num_edges,
            "avg_degree": self.avg_degree,
            "global_clustering": self.global_clustering,
            "avg_local_clustering": self.avg_local_clustering,
            "diameter": self.diameter,
            "node_features": self.feature_dim,
            "classes": self.num_classes,
            "edge_homophily": self.edge_homophily,
            "adjusted_homophily": self.adjusted_homophily,
            "label_informativeness": self.label_informativeness,
            "class_counts": list(self.class_counts),
            "connected": self.connected,
        }

    def as_table(self) -> str:
        rows = [
            ("nodes", str(self.num_nodes)),
            ("edges", str(self.num_edges)),
            ("avg degree", f"{self.avg_degree:.2f}"),
            ("global clustering", f"{self.global_clustering:.2f}"),
            ("avg local clustering", f"{self.avg_local_clustering:.2f}"),
            ("diameter", str(self.diameter)),
            ("node features", str(self.feature_dim)),
            ("classes", str(self.num_classes)),
            ("edge homophily", f"{self.edge_homophily:.2f}"),
            ("adjusted homophily", f"{self.adjusted_homophily:.2f}"),
            ("label informativeness", f"{self.label_informativeness:.2f}"),
        ]
        label_width = max(len(label) for label, _ in rows)
        value_width = max(max(len(value) for _, value in rows), len(self.name))
        lines = [f"{'':<{label_width}}  {self.name:>{value_width}}"]
        lines += [f"{label:<{label_width}}  {value:>{value_width}}" for label, value in rows]
        return "\n".join(lines)


def stat_report(dataset: Dataset) -> StatReport:
    g = _undirected(dataset.graph)
    membership = connected_components(g)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        diam = diameter(g)
    return StatReport(
        name=dataset.name,
        num_nodes=g.num_nodes,
        num_edges=g.num_edges,
        avg_degree=2 * g.num_edges / g.num_nodes,
        global_clustering=global_clustering(g),
        avg_local_clustering=avg_local_clustering(g),
        diameter=diam,
        feature_dim=dataset.feature_dim,
        num_classes=dataset.num_classes,
        edge_homophily=edge_homophily(g, dataset.labels),
        adjusted_homophily=adjusted_homophily(g, dataset.labels),
        label_informativeness=label_informativeness(g, dataset.labels),
        class_counts=tuple(np.bincount(dataset.labels,
                                       minlength=dataset.num_classes).tolist()),
        connected=bool(membership.max() == 0),
    )
