"""Raw-data importer and regression-target bucketing.

Supports ingesting public node-classification releases such as the Wikipedia
animal-page networks (``musae`` layout: an edge CSV, a per-node target CSV,
and optionally a JSON feature file mapping node id to active feature
indices). Note that two releases of those particular networks circulate with
different edge sets; which files were ingested is recorded in the saved
meta.json provenance so results stay attributable.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError
from .graph import Dataset, build_graph
from .storage import _CsvReader, _parse_float, _parse_int


def bucket_regression_target(targets: Sequence[int] | np.ndarray,
                             num_buckets: int,
                             boundaries: Optional[Sequence[float]] = None) -> np.ndarray:
    """Equal-frequency class indices for integer regression targets.

    Nodes are sorted by target and cut into ``num_buckets`` contiguous groups
    whose ideal sizes differ by at most one. Ties never straddle a boundary:
    a run of equal targets goes whole to the bucket holding the majority of
    the run under the ideal cut, lower bucket index winning exact ties. The
    result depends only on each node's target value, so it is invariant
    under any permutation of the input.

    When the original class boundaries of a published dataset are known,
    pass them as ``boundaries`` (``num_buckets - 1`` ascending upper edges,
    inclusive); quantile bucketing is only an approximation of unpublished
    cuts.
    """
    targets = np.asarray(targets, dtype=np.int64)
    if targets.size == 0:
        raise ValidationError("targets must be non-empty")
    if num_buckets < 2:
        raise ValidationError(f"num_buckets must be >= 2, got {num_buckets}")

    if boundaries is not None:
        edges = np.asarray(boundaries, dtype=np.float64)
        if len(edges) != num_buckets - 1 or np.any(np.diff(edges) <= 0):
            raise ValidationError(
                f"boundaries must be {num_buckets - 1} strictly ascending values")
        return np.searchsorted(edges, targets, side="left").astype(np.int64)

    values, counts = np.unique(targets, return_counts=True)
    if len(values) < num_buckets:
        raise ValidationError(
            f"num_buckets={num_buckets} exceeds {len(values)} distinct target values")

    n = len(targets)
    base, extra = divmod(n, num_buckets)
    cuts = np.cumsum([base + (1 if k < extra else 0) for k in range(num_buckets)])
    starts = np.concatenate([[0], cuts[:-1]])

    value_to_bucket = np.empty(len(values), dtype=np.int64)
    run_start = 0
    for vi, count in enumerate(counts):
        run_end = run_start + count
        overlaps = np.minimum(cuts, run_end) - np.maximum(starts, run_start)
        value_to_bucket[vi] = int(np.argmax(overlaps))  # argmax takes lowest on ties
        run_start = run_end
    return value_to_bucket[np.searchsorted(values, targets)]


def _read_id_value_csv(path: Path, delimiter: str) -> list[tuple[int, str, str]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header:
            raise ValidationError(f"{path}: empty file, expected a header row")
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split(delimiter)
            if len(parts) != 2:
                raise ValidationError(
                    f"{path}:{lineno}: expected 2 columns, got {len(parts)}")
            rows.append((lineno, parts[0].strip(), parts[1].strip()))
    return rows


def _dense_features_from_csv(path: Path, delimiter: str,
                             id_map: dict[str, int]) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split(delimiter)
    width = len(header) - 1
    if width < 0:
        raise ValidationError(f"{path}: feature file needs at least an id column")
    features = np.zeros((len(id_map), width), dtype=np.float64)
    seen = np.zeros(len(id_map), dtype=bool)
    with open(path, encoding="utf-8") as fh:
        fh.readline()
        for lineno, line in enumerate(fh, start=2):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split(delimiter)
            if len(parts) != width + 1:
                raise ValidationError(
                    f"{path}:{lineno}: expected {width + 1} columns, got {len(parts)}")
            key = parts[0].strip()
            if key not in id_map:
                raise ValidationError(f"{path}:{lineno}: unknown node id {key!r}")
            i = id_map[key]
            if seen[i]:
                raise ValidationError(f"{path}:{lineno}: duplicate feature row for {key!r}")
            seen[i] = True
            features[i] = [_parse_float(c, path, lineno, f"feature {j}")
                           for j, c in enumerate(parts[1:])]
    if not seen.all():
        raise ValidationError(f"{path}: feature rows for {int(seen.sum())} of {len(id_map)} nodes")
    return features


def _multihot_features_from_json(path: Path, id_map: dict[str, int]) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        table = json.load(fh)
    max_index = -1
    for key, indices in table.items():
        if key not in id_map:
            raise ValidationError(f"{path}: unknown node id {key!r}")
        if indices:
            max_index = max(max_index, max(indices))
    features = np.zeros((len(id_map), max_index + 1), dtype=np.float64)
    for key, indices in table.items():
        features[id_map[key], indices] = 1.0
    return features


def import_raw(edge_file: str | os.PathLike,
               label_file: str | os.PathLike,
               feature_file: Optional[str | os.PathLike] = None,
               *,
               directed: bool = False,
               delimiter: str = ",",
               bucket_target: Optional[int] = None,
               boundaries: Optional[Sequence[float]] = None,
               name: Optional[str] = None) -> tuple[Dataset, dict[str, int]]:
    """Ingest raw edge/label/feature files into a Dataset.

    Node identity comes from the label file: ids are densely reindexed in
    order of first appearance there, and the original-id -> index map is
    returned alongside the dataset. When ``bucket_target`` is set the label
    column is treated as an integer regression target, classes are derived
    by bucketing, and the raw target is kept on the dataset.
    """
    edge_path, label_path = Path(edge_file), Path(label_file)

    id_map: dict[str, int] = {}
    raw_values: list[int] = []
    for lineno, key, value in _read_id_value_csv(label_path, delimiter):
        if key in id_map:
            raise ValidationError(
                f"{label_path}:{lineno}: duplicate node record {key!r}")
        id_map[key] = len(id_map)
        raw_values.append(_parse_int(value, label_path, lineno, "label/target value"))
    if not id_map:
        raise ValidationError(f"{label_path}: no node records")
    values = np.asarray(raw_values, dtype=np.int64)

    edges = []
    for lineno, a, b in _read_id_value_csv(edge_path, delimiter):
        for endpoint in (a, b):
            if endpoint not in id_map:
                raise ValidationError(
                    f"{edge_path}:{lineno}: dangling edge endpoint {endpoint!r}")
        edges.append((id_map[a], id_map[b]))
    graph = build_graph(edges, num_nodes=len(id_map), directed=directed)

    if bucket_target is not None:
        labels = bucket_regression_target(values, bucket_target, boundaries)
        num_classes = bucket_target
        target = values
    else:
        if values.min() < 0:
            raise ValidationError(f"{label_path}: negative class index {values.min()}")
        labels = values
        num_classes = int(values.max()) + 1
        if num_classes < 2:
            num_classes = 2
        target = None

    if feature_file is None:
        features = np.zeros((len(id_map), 0), dtype=np.float64)
    else:
        feature_path = Path(feature_file)
        if feature_path.suffix == ".json":
            features = _multihot_features_from_json(feature_path, id_map)
        else:
            features = _dense_features_from_csv(feature_path, delimiter, id_map)

    task = "binary" if num_classes == 2 else "multiclass"
    dataset = Dataset(graph=graph, labels=labels, num_classes=num_classes,
                      features=features, task=task,
                      name=name or edge_path.stem,
                      regression_target=target)
    return dataset, id_map


def import_provenance(edge_file, label_file, feature_file, *,
                      directed: bool, bucket_target: Optional[int]) -> dict:
    """meta.json provenance block recording what was ingested and how."""
    return {
        "edge_file": str(edge_file),
        "label_file": str(label_file),
        "feature_file": None if feature_file is None else str(feature_file),
        "directed": directed,
        "bucketed_classes": bucket_target,
    }
