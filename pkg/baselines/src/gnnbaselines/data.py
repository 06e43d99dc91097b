"""Readers and writers for the benchmark's on-disk exchange formats.

This package talks to the dataset toolkit exclusively through files: it
reads a dataset directory (meta.json, edges.csv, labels.csv, features.csv)
plus splits.json, and writes per-split prediction CSVs
(node_id,score_0,...,score_{C-1}) that the toolkit's ``eval score`` command
consumes. Keeping an independent reader here is deliberate - the files are
the contract.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass(frozen=True)
class GraphData:
    """One loaded dataset: message arcs plus node labels and features.

    ``edge_src``/``edge_dst`` hold one entry per message direction; for
    undirected datasets both orientations of every edge are present.
    """

    name: str
    task: str
    num_nodes: int
    num_classes: int
    edge_src: np.ndarray
    edge_dst: np.ndarray
    labels: np.ndarray
    features: np.ndarray

    @property
    def feature_dim(self) -> int:
        return self.features.shape[1]


@dataclass(frozen=True)
class SplitIndices:
    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray


def _read_csv_body(path: Path, expected_columns: int):
    with open(path, encoding="utf-8") as fh:
        fh.readline()
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != expected_columns:
                raise ValueError(f"{path}:{lineno}: expected {expected_columns} "
                                 f"columns, got {len(parts)}")
            yield parts


def load_dataset_dir(path: str | Path) -> GraphData:
    root = Path(path)
    with open(root / "meta.json", encoding="utf-8") as fh:
        meta = json.load(fh)
    n = meta["num_nodes"]

    src, dst = [], []
    for a, b in _read_csv_body(root / "edges.csv", 2):
        src.append(int(a))
        dst.append(int(b))
    edge_src = np.asarray(src, dtype=np.int64)
    edge_dst = np.asarray(dst, dtype=np.int64)
    if not meta["directed"]:
        edge_src, edge_dst = (np.concatenate([edge_src, edge_dst]),
                              np.concatenate([edge_dst, edge_src]))

    labels = np.zeros(n, dtype=np.int64)
    for a, b in _read_csv_body(root / "labels.csv", 2):
        labels[int(a)] = int(b)

    feature_dim = meta["feature_dim"]
    features = np.zeros((n, feature_dim), dtype=np.float64)
    for parts in _read_csv_body(root / "features.csv", feature_dim + 1):
        features[int(parts[0])] = [float(x) for x in parts[1:]]

    return GraphData(name=meta["name"], task=meta["task"], num_nodes=n,
                     num_classes=meta["num_classes"],
                     edge_src=edge_src, edge_dst=edge_dst,
                     labels=labels, features=features)


def load_splits_file(path: str | Path) -> list[SplitIndices]:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    return [
        SplitIndices(train=np.asarray(s["train"], dtype=np.int64),
                     validation=np.asarray(s["validation"], dtype=np.int64),
                     test=np.asarray(s["test"], dtype=np.int64))
        for s in obj["splits"]
    ]


def write_predictions(path: str | Path, node_ids: np.ndarray,
                      scores: np.ndarray) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    width = scores.shape[1]
    header = "node_id," + ",".join(f"score_{c}" for c in range(width))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for i, row in zip(node_ids.tolist(), scores.tolist()):
            fh.write(f"{i}," + ",".join(repr(float(x)) for x in row) + "\n")
