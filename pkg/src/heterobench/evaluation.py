"""Scoring prediction files: accuracy, ROC AUC, aggregation, model ranking.

Multiclass datasets are scored by accuracy, binary ones by ROC AUC. For
binary tasks the prediction files carry both class scores and the class-1
column is read as the positive score.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .graph import Dataset, SplitSet
from .storage import Predictions, load_predictions, predictions_filename


def _rows_for(predictions: Predictions, node_set: np.ndarray) -> np.ndarray:
    """Row indices covering node_set; raises when any node lacks a row."""
    node_set = np.asarray(node_set, dtype=np.int64)
    lookup = {int(v): i for i, v in enumerate(predictions.node_ids)}
    try:
        return np.asarray([lookup[int(v)] for v in node_set], dtype=np.int64)
    except KeyError as missing:
        raise ValidationError(f"no prediction row for node {missing.args[0]}") from None


def accuracy(predictions: Predictions, labels: np.ndarray,
             node_set: np.ndarray, num_classes: int) -> float:
    """Fraction of node_set whose argmax score (ties to the lowest class)
    matches the label."""
    if predictions.num_classes != num_classes:
        raise ValidationError(
            f"score width {predictions.num_classes} != num_classes {num_classes}")
    rows = _rows_for(predictions, node_set)
    predicted = np.argmax(predictions.scores[rows], axis=1)
    return float(np.mean(predicted == labels[np.asarray(node_set, dtype=np.int64)]))


def _midranks(values: np.ndarray) -> np.ndarray:
    """1-based ranks with ties sharing the average rank of their run."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values), dtype=np.float64)
    sorted_values = values[order]
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and sorted_values[j + 1] == sorted_values[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def roc_auc(scores: np.ndarray, labels: np.ndarray) -> float:
    """Mann-Whitney AUC with midrank tie handling.

    (sum of positive ranks - P(P+1)/2) / (P*N) over the given score/label
    pairs; tied score pairs count one half.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.shape != labels.shape:
        raise ValidationError("scores and labels must align")
    positives = int((labels == 1).sum())
    negatives = int((labels == 0).sum())
    if positives == 0 or negatives == 0:
        raise ValidationError("ROC AUC needs at least one positive and one negative")
    ranks = _midranks(scores)
    rank_sum = float(ranks[labels == 1].sum())
    return (rank_sum - positives * (positives + 1) / 2) / (positives * negatives)


def roc_auc_predictions(predictions: Predictions, labels: np.ndarray,
                        node_set: np.ndarray) -> float:
    if predictions.num_classes != 2:
        raise ValidationError(
            f"ROC AUC needs binary score files, got width {predictions.num_classes}")
    node_set = np.asarray(node_set, dtype=np.int64)
    rows = _rows_for(predictions, node_set)
    return roc_auc(predictions.scores[rows, 1], labels[node_set])


def aggregate(values) -> tuple[float, float]:
    """Mean and sample (n-1) standard deviation of per-split metric values."""
    values = np.asarray(values, dtype=np.float64)
    if len(values) < 2:
        raise ValidationError(f"aggregation needs >= 2 values, got {len(values)}")
    return float(values.mean()), float(values.std(ddof=1))


def rank_models(means: dict[str, float]) -> dict[str, int]:
    """Competition ranks: 1 for the highest mean; exact ties share the
    minimal rank and the next rank skips accordingly."""
    if not means:
        raise ValidationError("rank_models needs at least one model")
    return {
        model: 1 + sum(1 for other in means.values() if other > value)
        for model, value in means.items()
    }


@dataclass(frozen=True)
class ModelResult:
    model: str
    metric: str
    per_split: tuple[float, ...]
    mean: float
    std: float


@dataclass(frozen=True)
class ResultTable:
    dataset: str
    metric: str
    results: tuple[ModelResult, ...]

    def as_dict(self) -> dict:
        return {
            "dataset": self.dataset,
            "metric": self.metric,
            "models": {
                r.model: {
                    "mean": r.mean,
                    "std": r.std,
                    "per_split": list(r.per_split),
                }
                for r in self.results
            },
        }

    def as_table(self) -> str:
        """Aligned text table, metric values in percent (two decimals)."""
        width = max([len(r.model) for r in self.results] + [len("model")])
        lines = [f"{'model':<{width}}  {self.dataset} ({self.metric})"]
        for r in self.results:
            lines.append(f"{r.model:<{width}}  {100 * r.mean:.2f} ± {100 * r.std:.2f}")
        return "\n".join(lines)


def metric_kind(dataset: Dataset) -> str:
    return "roc_auc" if dataset.task == "binary" else "accuracy"


def score_split(dataset: Dataset, predictions: Predictions,
                node_set: np.ndarray) -> float:
    if metric_kind(dataset) == "roc_auc":
        return roc_auc_predictions(predictions, dataset.labels, node_set)
    return accuracy(predictions, dataset.labels, node_set, dataset.num_classes)


def _validate_coverage(predictions: Predictions, split, split_index: int) -> None:
    allowed = np.union1d(split.validation, split.test)
    extra = np.setdiff1d(predictions.node_ids, allowed)
    if len(extra):
        raise ValidationError(
            f"split {split_index}: prediction rows for nodes outside the "
            f"evaluation set, e.g. node {int(extra[0])}")


def score_model(dataset: Dataset, splits: SplitSet,
                predictions_dir: str | Path, model: str) -> ModelResult:
    """Score one model's per-split prediction files on the test sets."""
    directory = Path(predictions_dir)
    per_split = []
    for i, split in enumerate(splits):
        path = directory / predictions_filename(i)
        if not path.exists():
            raise ValidationError(f"missing prediction file {path}")
        predictions = load_predictions(path)
        _validate_coverage(predictions, split, i)
        per_split.append(score_split(dataset, predictions, split.test))
    mean, std = aggregate(per_split) if len(per_split) >= 2 else (per_split[0], 0.0)
    return ModelResult(model=model, metric=metric_kind(dataset),
                       per_split=tuple(per_split), mean=mean, std=std)


def score_predictions(dataset: Dataset, splits: SplitSet,
                      predictions_dir: str | Path) -> ResultTable:
    """Score a predictions directory holding either one model's split files
    directly or one subdirectory of split files per model."""
    directory = Path(predictions_dir)
    if (directory / predictions_filename(0)).exists():
        model_dirs = [(directory.name, directory)]
    else:
        model_dirs = sorted((p.name, p) for p in directory.iterdir()
                            if p.is_dir() and (p / predictions_filename(0)).exists())
        if not model_dirs:
            raise ValidationError(f"{directory}: no prediction files found")
    results = tuple(score_model(dataset, splits, path, name)
                    for name, path in model_dirs)
    return ResultTable(dataset=dataset.name, metric=metric_kind(dataset),
                       results=results)
