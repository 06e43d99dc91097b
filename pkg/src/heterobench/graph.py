"""Canonical in-memory graph and dataset model.

Graphs are stored in compressed sparse row form with both out- and
in-adjacency always materialized (duplicate detection needs in-degrees).
All structures are immutable after construction and safe for concurrent
readers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import ValidationError

logger = logging.getLogger(__name__)

# Node indices are dense 0-based ints; importers own any ID remapping.
# A hard cap keeps u*n+v edge keys inside int64.
MAX_NODES = 2**31


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple graph without self-loops.

    For undirected graphs every edge is stored in both adjacency directions
    and ``num_edges`` counts unordered edges; for directed graphs it counts
    arcs. Neighbor lists are sorted ascending with no repeats.
    """

    num_nodes: int
    directed: bool
    num_edges: int
    out_indptr: np.ndarray
    out_indices: np.ndarray
    in_indptr: np.ndarray
    in_indices: np.ndarray

    def out_neighbors(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v]:self.out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]]

    @property
    def out_degrees(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    @property
    def in_degrees(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    @property
    def degrees(self) -> np.ndarray:
        """Undirected degrees; defined only for undirected graphs."""
        if self.directed:
            raise ValidationError("degrees of a directed graph are ambiguous; symmetrize first")
        return self.out_degrees

    def arcs(self) -> tuple[np.ndarray, np.ndarray]:
        """All stored (source, target) pairs, sorted by (source, target)."""
        src = np.repeat(np.arange(self.num_nodes, dtype=np.int64), self.out_degrees)
        return src, self.out_indices

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_nodes == other.num_nodes
            and self.directed == other.directed
            and self.num_edges == other.num_edges
            and np.array_equal(self.out_indptr, other.out_indptr)
            and np.array_equal(self.out_indices, other.out_indices)
            and np.array_equal(self.in_indptr, other.in_indptr)
            and np.array_equal(self.in_indices, other.in_indices)
        )

    def validate(self) -> None:
        """Check every structural invariant; used by loaders."""
        n = self.num_nodes
        if n <= 0:
            raise ValidationError("graph must have at least one node")
        for name, indptr, indices in (
            ("out", self.out_indptr, self.out_indices),
            ("in", self.in_indptr, self.in_indices),
        ):
            if len(indptr) != n + 1 or indptr[0] != 0 or indptr[-1] != len(indices):
                raise ValidationError(f"{name}_indptr is inconsistent")
            if np.any(np.diff(indptr) < 0):
                raise ValidationError(f"{name}_indptr is not monotone")
            if len(indices) and (indices.min() < 0 or indices.max() >= n):
                raise ValidationError(f"{name}_indices out of range")
            for v in range(n):
                row = indices[indptr[v]:indptr[v + 1]]
                if len(row) > 1 and np.any(np.diff(row) <= 0):
                    raise ValidationError(f"{name}-neighbors of node {v} not strictly sorted")
                if np.any(row == v):
                    raise ValidationError(f"self-loop stored at node {v}")
        total_out = len(self.out_indices)
        expected = self.num_edges if self.directed else 2 * self.num_edges
        if total_out != expected:
            raise ValidationError(
                f"arc count {total_out} does not match num_edges={self.num_edges} "
                f"(directed={self.directed})"
            )
        if not self.directed:
            if not (np.array_equal(self.out_indptr, self.in_indptr)
                    and np.array_equal(self.out_indices, self.in_indices)):
                raise ValidationError("undirected graph has in_adj != out_adj")
            src, dst = self.arcs()
            fwd = set(zip(src.tolist(), dst.tolist()))
            if any((v, u) not in fwd for u, v in fwd):
                raise ValidationError("undirected adjacency is not symmetric")


def _dedup_arcs(src: np.ndarray, dst: np.ndarray, num_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    keys = src * np.int64(num_nodes) + dst
    keys = np.unique(keys)
    return keys // num_nodes, keys % num_nodes


def _csr(src: np.ndarray, dst: np.ndarray, num_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    # src assumed sorted (ties broken by dst) as produced by _dedup_arcs
    counts = np.bincount(src, minlength=num_nodes)
    indptr = np.zeros(num_nodes + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst.astype(np.int64, copy=False)


def build_graph(edge_list: Sequence[tuple[int, int]] | np.ndarray,
                num_nodes: int,
                directed: bool) -> Graph:
    """Build a canonical Graph from raw (source, target) pairs.

    Self-loops are dropped and parallel edges collapsed (counts go to the
    log: real-world dumps contain both and must not crash ingestion).
    Undirected input is symmetrized. Deterministic and insensitive to the
    order of ``edge_list``.
    """
    if num_nodes <= 0:
        raise ValidationError(f"num_nodes must be positive, got {num_nodes}")
    if num_nodes > MAX_NODES:
        raise ValidationError(f"num_nodes {num_nodes} exceeds supported maximum {MAX_NODES}")
    edges = np.asarray(edge_list, dtype=np.int64)
    if edges.size == 0:
        edges = edges.reshape(0, 2)
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise ValidationError("edge_list must be a sequence of (source, target) pairs")
    if edges.size and (edges.min() < 0 or edges.max() >= num_nodes):
        bad = edges[(edges < 0).any(axis=1) | (edges >= num_nodes).any(axis=1)][0]
        raise ValidationError(
            f"edge ({bad[0]}, {bad[1]}) has an endpoint outside [0, {num_nodes})")

    loops = edges[:, 0] == edges[:, 1]
    num_loops = int(loops.sum())
    edges = edges[~loops]

    src, dst = edges[:, 0], edges[:, 1]
    if not directed:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    src, dst = _dedup_arcs(src, dst, num_nodes)

    num_arcs = len(src)
    num_edges = num_arcs if directed else num_arcs // 2
    num_collapsed = len(edges) - (num_arcs if directed else num_edges)
    if num_loops or num_collapsed:
        logger.info("build_graph: dropped %d self-loop(s), collapsed %d parallel edge(s)",
                    num_loops, num_collapsed)

    out_indptr, out_indices = _csr(src, dst, num_nodes)
    if directed:
        rsrc, rdst = _dedup_arcs(dst, src, num_nodes)
        in_indptr, in_indices = _csr(rsrc, rdst, num_nodes)
    else:
        in_indptr, in_indices = out_indptr, out_indices

    return Graph(num_nodes=num_nodes, directed=directed, num_edges=num_edges,
                 out_indptr=out_indptr, out_indices=out_indices,
                 in_indptr=in_indptr, in_indices=in_indices)


def symmetrize(graph: Graph) -> Graph:
    """Undirected view whose edge set is {(u,v) : u->v or v->u}.

    Idempotent: an undirected graph is returned unchanged.
    """
    if not graph.directed:
        return graph
    src, dst = graph.arcs()
    # reciprocal arc pairs merge silently; they are not parallel-edge noise
    lo, hi = np.minimum(src, dst), np.maximum(src, dst)
    return build_graph(np.column_stack(_dedup_arcs(lo, hi, graph.num_nodes)),
                       graph.num_nodes, directed=False)


TASK_KINDS = ("multiclass", "binary")


@dataclass(frozen=True, eq=False)
class Dataset:
    """A graph with node labels and features; the unit every module consumes.

    ``regression_target`` carries the raw per-node integer target for
    datasets whose classes were derived by bucketing a regression quantity
    (duplicate detection keys on it).
    """

    graph: Graph
    labels: np.ndarray
    num_classes: int
    features: np.ndarray
    task: str
    name: str
    regression_target: Optional[np.ndarray] = None

    def __post_init__(self):
        n = self.graph.num_nodes
        if self.task not in TASK_KINDS:
            raise ValidationError(f"task must be one of {TASK_KINDS}, got {self.task!r}")
        if self.num_classes < 2:
            raise ValidationError(f"num_classes must be >= 2, got {self.num_classes}")
        if self.task == "binary" and self.num_classes != 2:
            raise ValidationError("binary task requires exactly 2 classes")
        if len(self.labels) != n:
            raise ValidationError(f"labels length {len(self.labels)} != num_nodes {n}")
        if len(self.labels) and (self.labels.min() < 0 or self.labels.max() >= self.num_classes):
            bad = int(np.argmax((self.labels < 0) | (self.labels >= self.num_classes)))
            raise ValidationError(
                f"label {self.labels[bad]} of node {bad} outside [0, {self.num_classes})")
        if self.features.ndim != 2 or self.features.shape[0] != n:
            raise ValidationError(f"features must be ({n}, F), got {self.features.shape}")
        if self.regression_target is not None and len(self.regression_target) != n:
            raise ValidationError(
                f"regression_target length {len(self.regression_target)} != num_nodes {n}")

    @property
    def num_nodes(self) -> int:
        return self.graph.num_nodes

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        targets_equal = (
            (self.regression_target is None) == (other.regression_target is None)
            and (self.regression_target is None
                 or np.array_equal(self.regression_target, other.regression_target))
        )
        return (
            self.graph == other.graph
            and np.array_equal(self.labels, other.labels)
            and self.num_classes == other.num_classes
            and np.array_equal(self.features, other.features)
            and self.task == other.task
            and self.name == other.name
            and targets_equal
        )


class Split(NamedTuple):
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray


@dataclass(frozen=True, eq=False)
class SplitSet:
    """Disjoint train/validation/test partitions of the node set.

    The type-level invariant is the partition property (checked here); the
    50/25/25 sizing is a postcondition of generation only, since filtered
    and externally supplied splits legitimately deviate from it.
    """

    splits: tuple[Split, ...]
    seed: Optional[int] = None
    num_nodes: int = field(default=0)

    def __post_init__(self):
        if not self.splits:
            raise ValidationError("SplitSet needs at least one split")
        n = self.num_nodes
        for i, split in enumerate(self.splits):
            parts = [np.asarray(p, dtype=np.int64) for p in split]
            sizes = sum(len(p) for p in parts)
            union = np.union1d(np.union1d(parts[0], parts[1]), parts[2])
            if sizes != n or len(union) != n or (n and (union[0] != 0 or union[-1] != n - 1)):
                raise ValidationError(
                    f"split {i} is not a partition of range({n}): "
                    f"sizes sum to {sizes}, union has {len(union)} nodes")
            if len(split.test) == 0:
                raise ValidationError(f"split {i} has an empty test set")
            for part in parts:
                if len(part) > 1 and np.any(np.diff(part) <= 0):
                    raise ValidationError(f"split {i} has an unsorted or duplicated index set")

    def __len__(self) -> int:
        return len(self.splits)

    def __iter__(self):
        return iter(self.splits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SplitSet):
            return NotImplemented
        return (
            self.seed == other.seed
            and self.num_nodes == other.num_nodes
            and len(self.splits) == len(other.splits)
            and all(
                np.array_equal(a.train, b.train)
                and np.array_equal(a.validation, b.validation)
                and np.array_equal(a.test, b.test)
                for a, b in zip(self.splits, other.splits)
            )
        )
