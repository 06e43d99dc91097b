"""On-disk dataset, split, and prediction formats.

A dataset directory holds:

    meta.json       name, task, directed, counts, feature_dim, has_target,
                    optional provenance
    edges.csv       source,target - one row per arc (directed) or per
                    unordered edge with source < target (undirected)
    labels.csv      node_id,label
    features.csv    node_id,f0,...,f{F-1}
    targets.csv     node_id,target (only when has_target)
    splits.json     optional split partitions

All CSVs are UTF-8 with LF line endings and a header row. Floats are
serialized as the shortest decimal that round-trips the 64-bit value, so
parsing and re-serializing any valid file is byte-identical. Formats are
plain text on purpose: they are the contract between this toolkit and
external model code, in any language.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .errors import ValidationError
from .graph import Dataset, Split, SplitSet, build_graph

META_FILE = "meta.json"
EDGES_FILE = "edges.csv"
LABELS_FILE = "labels.csv"
FEATURES_FILE = "features.csv"
TARGETS_FILE = "targets.csv"
SPLITS_FILE = "splits.json"


def _format_float(x: float) -> str:
    return repr(float(x))


def write_json(path: Path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def read_json(path: Path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write_csv(path: Path, header: list[str], rows: Iterable[list[str]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


class _CsvReader:
    """Line-tracking reader so format errors can name the offending row."""

    def __init__(self, path: Path, expected_columns: int):
        self.path = path
        self.expected = expected_columns

    def rows(self):
        with open(self.path, encoding="utf-8") as fh:
            header = fh.readline()
            if not header:
                raise ValidationError(f"{self.path}: empty file, expected a header row")
            for lineno, line in enumerate(fh, start=2):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != self.expected:
                    raise ValidationError(
                        f"{self.path}:{lineno}: expected {self.expected} columns, "
                        f"got {len(parts)}")
                yield lineno, parts


def _parse_int(value: str, path: Path, lineno: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValidationError(f"{path}:{lineno}: malformed {what} {value!r}") from None


def _parse_float(value: str, path: Path, lineno: int, what: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValidationError(f"{path}:{lineno}: malformed {what} {value!r}") from None


def save_dataset(dataset: Dataset, path: str | os.PathLike,
                 splits: Optional[SplitSet] = None,
                 provenance: Optional[dict] = None) -> Path:
    """Write a dataset directory; returns its path."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)

    meta = {
        "name": dataset.name,
        "task": dataset.task,
        "directed": dataset.graph.directed,
        "num_nodes": dataset.num_nodes,
        "num_edges": dataset.graph.num_edges,
        "num_classes": dataset.num_classes,
        "feature_dim": dataset.feature_dim,
        "has_target": dataset.regression_target is not None,
    }
    if provenance:
        meta["provenance"] = provenance
    write_json(root / META_FILE, meta)

    src, dst = dataset.graph.arcs()
    if not dataset.graph.directed:
        keep = src < dst
        src, dst = src[keep], dst[keep]
    _write_csv(root / EDGES_FILE, ["source", "target"],
               ([str(u), str(v)] for u, v in zip(src.tolist(), dst.tolist())))

    _write_csv(root / LABELS_FILE, ["node_id", "label"],
               ([str(i), str(y)] for i, y in enumerate(dataset.labels.tolist())))

    header = ["node_id"] + [f"f{j}" for j in range(dataset.feature_dim)]
    _write_csv(root / FEATURES_FILE, header,
               ([str(i)] + [_format_float(x) for x in row]
                for i, row in enumerate(dataset.features.tolist())))

    if dataset.regression_target is not None:
        _write_csv(root / TARGETS_FILE, ["node_id", "target"],
                   ([str(i), str(t)] for i, t in
                    enumerate(dataset.regression_target.tolist())))

    if splits is not None:
        save_splits(splits, root / SPLITS_FILE)
    return root


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValidationError(message)


def load_dataset(path: str | os.PathLike) -> Dataset:
    """Load and fully validate a dataset directory."""
    root = Path(path)
    meta_path = root / META_FILE
    if not meta_path.exists():
        raise ValidationError(f"{root}: not a dataset directory ({META_FILE} missing)")
    meta = read_json(meta_path)
    for key in ("name", "task", "directed", "num_nodes", "num_edges",
                "num_classes", "feature_dim", "has_target"):
        _require(key in meta, f"{meta_path}: missing key {key!r}")

    n = meta["num_nodes"]
    num_classes = meta["num_classes"]
    feature_dim = meta["feature_dim"]

    edges_path = root / EDGES_FILE
    edges = []
    for lineno, (a, b) in _CsvReader(edges_path, 2).rows():
        u = _parse_int(a, edges_path, lineno, "source")
        v = _parse_int(b, edges_path, lineno, "target")
        if not (0 <= u < n and 0 <= v < n):
            raise ValidationError(
                f"{edges_path}:{lineno}: endpoint outside [0, {n})")
        edges.append((u, v))
    graph = build_graph(edges, num_nodes=n, directed=meta["directed"])
    _require(graph.num_edges == meta["num_edges"],
             f"{meta_path}: num_edges={meta['num_edges']} but {EDGES_FILE} "
             f"holds {graph.num_edges}")
    graph.validate()

    labels_path = root / LABELS_FILE
    labels = np.empty(n, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    for lineno, (a, b) in _CsvReader(labels_path, 2).rows():
        i = _parse_int(a, labels_path, lineno, "node_id")
        y = _parse_int(b, labels_path, lineno, "label")
        if not 0 <= i < n:
            raise ValidationError(f"{labels_path}:{lineno}: node_id {i} outside [0, {n})")
        if seen[i]:
            raise ValidationError(f"{labels_path}:{lineno}: duplicate node_id {i}")
        if not 0 <= y < num_classes:
            raise ValidationError(
                f"{labels_path}:{lineno}: label {y} outside [0, {num_classes})")
        seen[i] = True
        labels[i] = y
    _require(bool(seen.all()), f"{labels_path}: rows for {int(seen.sum())} of {n} nodes")

    features_path = root / FEATURES_FILE
    features = np.empty((n, feature_dim), dtype=np.float64)
    seen[:] = False
    for lineno, parts in _CsvReader(features_path, feature_dim + 1).rows():
        i = _parse_int(parts[0], features_path, lineno, "node_id")
        if not 0 <= i < n:
            raise ValidationError(f"{features_path}:{lineno}: node_id {i} outside [0, {n})")
        if seen[i]:
            raise ValidationError(f"{features_path}:{lineno}: duplicate node_id {i}")
        seen[i] = True
        for j, cell in enumerate(parts[1:]):
            features[i, j] = _parse_float(cell, features_path, lineno, f"feature f{j}")
    _require(bool(seen.all()), f"{features_path}: rows for {int(seen.sum())} of {n} nodes")

    target = None
    targets_path = root / TARGETS_FILE
    if meta["has_target"]:
        _require(targets_path.exists(), f"{meta_path}: has_target set but {TARGETS_FILE} missing")
        target = np.empty(n, dtype=np.int64)
        seen[:] = False
        for lineno, (a, b) in _CsvReader(targets_path, 2).rows():
            i = _parse_int(a, targets_path, lineno, "node_id")
            if not 0 <= i < n:
                raise ValidationError(f"{targets_path}:{lineno}: node_id {i} outside [0, {n})")
            if seen[i]:
                raise ValidationError(f"{targets_path}:{lineno}: duplicate node_id {i}")
            seen[i] = True
            target[i] = _parse_int(b, targets_path, lineno, "target")
        _require(bool(seen.all()), f"{targets_path}: rows for {int(seen.sum())} of {n} nodes")
    elif targets_path.exists():
        raise ValidationError(f"{meta_path}: has_target false but {TARGETS_FILE} present")

    return Dataset(graph=graph, labels=labels, num_classes=num_classes,
                   features=features, task=meta["task"], name=meta["name"],
                   regression_target=target)


def save_splits(splits: SplitSet, path: str | os.PathLike) -> None:
    obj = {
        "seed": splits.seed,
        "num_nodes": splits.num_nodes,
        "splits": [
            {
                "train": s.train.tolist(),
                "validation": s.validation.tolist(),
                "test": s.test.tolist(),
            }
            for s in splits
        ],
    }
    write_json(Path(path), obj)


def load_splits(path: str | os.PathLike) -> SplitSet:
    path = Path(path)
    obj = read_json(path)
    for key in ("num_nodes", "splits"):
        if key not in obj:
            raise ValidationError(f"{path}: missing key {key!r}")
    splits = tuple(
        Split(
            train=np.asarray(entry["train"], dtype=np.int64),
            validation=np.asarray(entry["validation"], dtype=np.int64),
            test=np.asarray(entry["test"], dtype=np.int64),
        )
        for entry in obj["splits"]
    )
    return SplitSet(splits=splits, seed=obj.get("seed"), num_nodes=obj["num_nodes"])


class Predictions(NamedTuple):
    """Per-node class scores produced by any model for one split."""

    node_ids: np.ndarray
    scores: np.ndarray

    @property
    def num_classes(self) -> int:
        return self.scores.shape[1]


def predictions_filename(split_index: int) -> str:
    return f"split_{split_index}.csv"


def save_predictions(path: str | os.PathLike, predictions: Predictions) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    width = predictions.num_classes
    header = ["node_id"] + [f"score_{c}" for c in range(width)]
    _write_csv(path, header,
               ([str(i)] + [_format_float(x) for x in row]
                for i, row in zip(predictions.node_ids.tolist(),
                                  predictions.scores.tolist())))


def load_predictions(path: str | os.PathLike) -> Predictions:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(",")
    if len(header) < 2 or header[0] != "node_id":
        raise ValidationError(f"{path}: malformed prediction header")
    width = len(header) - 1
    ids, scores = [], []
    for lineno, parts in _CsvReader(path, width + 1).rows():
        ids.append(_parse_int(parts[0], path, lineno, "node_id"))
        scores.append([_parse_float(c, path, lineno, f"score_{j}")
                       for j, c in enumerate(parts[1:])])
    node_ids = np.asarray(ids, dtype=np.int64)
    if len(np.unique(node_ids)) != len(node_ids):
        raise ValidationError(f"{path}: duplicate node_id rows")
    return Predictions(node_ids=node_ids,
                       scores=np.asarray(scores, dtype=np.float64).reshape(len(ids), width))
