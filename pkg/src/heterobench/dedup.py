"""Duplicate-node detection, dataset filtering, and the neighborhood-matching
leakage oracle.

A node is a duplicate when it has no incoming edges and some other node
carries the same regression target and the exact same set of outgoing edges.
Such clones leak labels across data splits: a test clone is solved by
matching its neighborhood against train nodes. Grouping keys on the exact
(target, sorted out-neighbor list) pair; feature vectors play no part in the
predicate, since clones may legitimately differ in features.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ValidationError
from .graph import Dataset, Split, SplitSet, build_graph


@dataclass(frozen=True)
class DuplicateGroup:
    """Nodes sharing one (target, out-neighbor set) key, at least one of
    which is a duplicate. ``keeper_id`` is the unique member that kept its
    incoming edges, when exactly one such member exists."""

    target: int
    out_neighbors: tuple[int, ...]
    duplicate_ids: tuple[int, ...]
    keeper_id: Optional[int]


@dataclass(frozen=True)
class DuplicateReport:
    num_nodes: int
    duplicate_ids: np.ndarray
    groups: tuple[DuplicateGroup, ...]
    per_class_duplicates: tuple[int, ...]

    def __post_init__(self):
        if sum(self.per_class_duplicates) != len(self.duplicate_ids):
            raise ValidationError("per-class duplicate counts do not sum to the total")

    @property
    def num_duplicates(self) -> int:
        return len(self.duplicate_ids)

    @property
    def num_non_duplicates(self) -> int:
        return self.num_nodes - self.num_duplicates

    def duplicate_mask(self) -> np.ndarray:
        mask = np.zeros(self.num_nodes, dtype=bool)
        mask[self.duplicate_ids] = True
        return mask

    def as_dict(self) -> dict:
        return {
            "num_nodes": self.num_nodes,
            "num_duplicates": self.num_duplicates,
            "num_non_duplicates": self.num_non_duplicates,
            "per_class_duplicates": list(self.per_class_duplicates),
            "duplicate_ids": self.duplicate_ids.tolist(),
            "groups": [
                {
                    "target": g.target,
                    "out_neighbors": list(g.out_neighbors),
                    "duplicate_ids": list(g.duplicate_ids),
                    "keeper_id": g.keeper_id,
                }
                for g in self.groups
            ],
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "DuplicateReport":
        return cls(
            num_nodes=obj["num_nodes"],
            duplicate_ids=np.asarray(obj["duplicate_ids"], dtype=np.int64),
            groups=tuple(
                DuplicateGroup(
                    target=g["target"],
                    out_neighbors=tuple(g["out_neighbors"]),
                    duplicate_ids=tuple(g["duplicate_ids"]),
                    keeper_id=g["keeper_id"],
                )
                for g in obj["groups"]
            ),
            per_class_duplicates=tuple(obj["per_class_duplicates"]),
        )


def find_duplicates(dataset: Dataset) -> DuplicateReport:
    """Detect duplicate nodes by hashing (target, out-neighbor set) keys."""
    if dataset.regression_target is None:
        raise ValidationError("find_duplicates needs a regression target")
    if not dataset.graph.directed:
        raise ValidationError("find_duplicates operates on the directed graph")
    g = dataset.graph
    target = dataset.regression_target
    in_deg = g.in_degrees

    buckets: dict[tuple[int, bytes], list[int]] = {}
    for v in range(g.num_nodes):
        key = (int(target[v]), g.out_neighbors(v).tobytes())
        buckets.setdefault(key, []).append(v)

    duplicates: list[int] = []
    groups: list[DuplicateGroup] = []
    for (tgt, _), members in sorted(buckets.items()):
        if len(members) < 2:
            continue
        dupes = [v for v in members if in_deg[v] == 0]
        if not dupes:
            continue
        with_incoming = [v for v in members if in_deg[v] > 0]
        keeper = with_incoming[0] if len(with_incoming) == 1 else None
        duplicates.extend(dupes)
        groups.append(DuplicateGroup(
            target=tgt,
            out_neighbors=tuple(g.out_neighbors(dupes[0]).tolist()),
            duplicate_ids=tuple(sorted(dupes)),
            keeper_id=keeper,
        ))

    duplicate_ids = np.asarray(sorted(duplicates), dtype=np.int64)
    per_class = np.bincount(dataset.labels[duplicate_ids], minlength=dataset.num_classes)
    return DuplicateReport(
        num_nodes=g.num_nodes,
        duplicate_ids=duplicate_ids,
        groups=tuple(groups),
        per_class_duplicates=tuple(per_class.tolist()),
    )


def filter_duplicates(dataset: Dataset,
                      report: DuplicateReport) -> tuple[Dataset, np.ndarray]:
    """Remove duplicates; returns the filtered dataset and the old->new map
    (-1 marks removed nodes). Survivors keep their relative order."""
    if report.num_nodes != dataset.num_nodes:
        raise ValidationError(
            f"report covers {report.num_nodes} nodes but dataset has {dataset.num_nodes}")
    keep = ~report.duplicate_mask()
    old_to_new = np.full(dataset.num_nodes, -1, dtype=np.int64)
    old_to_new[keep] = np.arange(int(keep.sum()), dtype=np.int64)

    src, dst = dataset.graph.arcs()
    alive = keep[src] & keep[dst]
    new_edges = np.column_stack([old_to_new[src[alive]], old_to_new[dst[alive]]])
    if not dataset.graph.directed:
        new_edges = new_edges[new_edges[:, 0] < new_edges[:, 1]]
    graph = build_graph(new_edges, num_nodes=int(keep.sum()),
                        directed=dataset.graph.directed)

    filtered = Dataset(
        graph=graph,
        labels=dataset.labels[keep],
        num_classes=dataset.num_classes,
        features=dataset.features[keep],
        task=dataset.task,
        name=f"{dataset.name}-filtered",
        regression_target=None if dataset.regression_target is None
        else dataset.regression_target[keep],
    )
    return filtered, old_to_new


def _majority_class(labels: np.ndarray, num_classes: int) -> int:
    # np.argmax returns the lowest index among ties
    return int(np.argmax(np.bincount(labels, minlength=num_classes)))


def neighborhood_match_predict(dataset: Dataset, split: Split) -> np.ndarray:
    """Label each test node by exact out-neighborhood match against train.

    Majority label among matching train nodes (ties to the lowest class);
    test nodes with an empty neighborhood or no match fall back to the
    train-set majority class. Returned in ``split.test`` order.
    """
    if len(split.train) == 0:
        raise ValidationError("neighborhood matching needs a non-empty train set")
    g = dataset.graph
    train_labels = dataset.labels[split.train]
    fallback = _majority_class(train_labels, dataset.num_classes)

    index: dict[bytes, list[int]] = {}
    for u in split.train.tolist():
        neighbors = g.out_neighbors(u)
        if len(neighbors):
            index.setdefault(neighbors.tobytes(), []).append(int(dataset.labels[u]))

    predictions = np.empty(len(split.test), dtype=np.int64)
    for i, v in enumerate(split.test.tolist()):
        neighbors = g.out_neighbors(v)
        matches = index.get(neighbors.tobytes()) if len(neighbors) else None
        if matches:
            predictions[i] = _majority_class(
                np.asarray(matches, dtype=np.int64), dataset.num_classes)
        else:
            predictions[i] = fallback
    return predictions


@dataclass(frozen=True)
class LeakageCell:
    accuracy_on_duplicates: Optional[float]
    accuracy_on_non_duplicates: Optional[float]


@dataclass(frozen=True)
class LeakageReport:
    """Test accuracy split into duplicate and non-duplicate nodes, per split.

    Cells are absent (None) when a split's test set contains no node of that
    kind; absent cells are excluded from the aggregates.
    """

    cells: tuple[LeakageCell, ...]
    mean_on_duplicates: Optional[float]
    std_on_duplicates: Optional[float]
    mean_on_non_duplicates: Optional[float]
    std_on_non_duplicates: Optional[float]

    def as_dict(self) -> dict:
        return {
            "per_split": [
                {
                    "accuracy_on_duplicates": c.accuracy_on_duplicates,
                    "accuracy_on_non_duplicates": c.accuracy_on_non_duplicates,
                }
                for c in self.cells
            ],
            "mean_on_duplicates": self.mean_on_duplicates,
            "std_on_duplicates": self.std_on_duplicates,
            "mean_on_non_duplicates": self.mean_on_non_duplicates,
            "std_on_non_duplicates": self.std_on_non_duplicates,
        }


def _mean_std(values: list[float]) -> tuple[Optional[float], Optional[float]]:
    if not values:
        return None, None
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1)) if len(values) >= 2 else None
    return mean, std


def leakage_report(dataset: Dataset, splits: SplitSet, report: DuplicateReport,
                   predictions: Optional[list[np.ndarray]] = None) -> LeakageReport:
    """Decompose per-split test accuracy over duplicates vs non-duplicates.

    ``predictions`` holds one per-test-node class array per split (in
    ``split.test`` order); when omitted, the neighborhood-matching oracle
    supplies them.
    """
    if report.num_nodes != dataset.num_nodes:
        raise ValidationError(
            f"report covers {report.num_nodes} nodes but dataset has {dataset.num_nodes}")
    if predictions is not None and len(predictions) != len(splits):
        raise ValidationError(
            f"{len(predictions)} prediction arrays for {len(splits)} splits")
    dup_mask = report.duplicate_mask()

    cells = []
    dup_values, non_values = [], []
    for i, split in enumerate(splits):
        predicted = (predictions[i] if predictions is not None
                     else neighborhood_match_predict(dataset, split))
        if len(predicted) != len(split.test):
            raise ValidationError(
                f"split {i}: {len(predicted)} predictions for {len(split.test)} test nodes")
        correct = predicted == dataset.labels[split.test]
        is_dup = dup_mask[split.test]

        acc_dup = float(correct[is_dup].mean()) if is_dup.any() else None
        acc_non = float(correct[~is_dup].mean()) if (~is_dup).any() else None
        if acc_dup is not None:
            dup_values.append(acc_dup)
        if acc_non is not None:
            non_values.append(acc_non)
        cells.append(LeakageCell(acc_dup, acc_non))

    mean_dup, std_dup = _mean_std(dup_values)
    mean_non, std_non = _mean_std(non_values)
    return LeakageReport(cells=tuple(cells),
                         mean_on_duplicates=mean_dup, std_on_duplicates=std_dup,
                         mean_on_non_duplicates=mean_non, std_on_non_duplicates=std_non)
