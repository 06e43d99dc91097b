"""Validation/test metrics used for step selection during training."""

from __future__ import annotations

import numpy as np


def accuracy(scores: np.ndarray, labels: np.ndarray) -> float:
    return float(np.mean(np.argmax(scores, axis=1) == labels))


def roc_auc(positive_scores: np.ndarray, labels: np.ndarray) -> float:
    """Mann-Whitney statistic with midrank tie handling."""
    order = np.argsort(positive_scores, kind="mergesort")
    ranks = np.empty(len(order), dtype=np.float64)
    ordered = positive_scores[order]
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and ordered[j + 1] == ordered[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2 + 1
        i = j + 1
    num_pos = int((labels == 1).sum())
    num_neg = len(labels) - num_pos
    if num_pos == 0 or num_neg == 0:
        raise ValueError("ROC AUC needs both classes present")
    return (float(ranks[labels == 1].sum()) - num_pos * (num_pos + 1) / 2) \
        / (num_pos * num_neg)


def evaluation_metric(task: str, scores: np.ndarray, labels: np.ndarray) -> float:
    if task == "binary":
        return roc_auc(scores[:, 1], labels)
    return accuracy(scores, labels)
