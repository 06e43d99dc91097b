"""Full-batch training loop: Adam, fixed step budget, best-step selection by
validation metric, prediction files for the validation and test nodes."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import torch
import torch.nn.functional as F

from .data import GraphData, SplitIndices, write_predictions
from .features import adjacency_augment, sgc_precompute
from .models import GraphTensors, ModelConfig, NodeClassifier
from .scoring import evaluation_metric

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainResult:
    node_ids: np.ndarray        # sorted validation + test nodes
    scores: np.ndarray          # softmax class scores at the best step
    best_step: int
    best_validation: float
    validation_history: tuple[float, ...]
    test_metric: float          # at the best step, for convenience


def prepare_features(data: GraphData, config: ModelConfig) -> np.ndarray:
    if config.architecture == "resnet_sgc":
        return sgc_precompute(data.features, data.edge_src, data.edge_dst,
                              data.num_nodes, config.sgc_power)
    if config.architecture == "resnet_adj":
        return adjacency_augment(data.features, data.edge_src, data.edge_dst,
                                 data.num_nodes)
    return data.features


def train_model(data: GraphData, split: SplitIndices,
                config: ModelConfig) -> TrainResult:
    torch.manual_seed(config.seed)

    features = torch.as_tensor(prepare_features(data, config),
                               dtype=torch.float32)
    labels = torch.as_tensor(data.labels, dtype=torch.long)
    graph = GraphTensors(data.edge_src, data.edge_dst, data.num_nodes)
    train_idx = torch.as_tensor(split.train, dtype=torch.long)

    eval_ids = np.union1d(split.validation, split.test)
    val_rows = np.searchsorted(eval_ids, split.validation)
    test_rows = np.searchsorted(eval_ids, split.test)
    eval_idx = torch.as_tensor(eval_ids, dtype=torch.long)
    val_labels = data.labels[split.validation]
    test_labels = data.labels[split.test]

    model = NodeClassifier(config, features.shape[1], data.num_classes)
    optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate,
                                 weight_decay=config.weight_decay)

    best_validation = -np.inf
    best_scores = None
    best_step = -1
    best_test = float("nan")
    history = []
    started = time.perf_counter()

    for step in range(config.steps):
        model.train()
        optimizer.zero_grad()
        logits = model(features, graph)
        loss = F.cross_entropy(logits[train_idx], labels[train_idx])
        loss.backward()
        optimizer.step()

        model.eval()
        with torch.no_grad():
            eval_scores = torch.softmax(model(features, graph)[eval_idx],
                                        dim=1).numpy().astype(np.float64)
        validation = evaluation_metric(data.task, eval_scores[val_rows], val_labels)
        history.append(validation)
        if validation > best_validation:
            best_validation = validation
            best_scores = eval_scores
            best_step = step
            best_test = evaluation_metric(data.task, eval_scores[test_rows],
                                          test_labels)
        if (step + 1) % 100 == 0:
            logger.info("step %d/%d loss %.4f val %.4f best %.4f",
                        step + 1, config.steps, loss.item(), validation,
                        best_validation)

    logger.info("%s: best step %d val %.4f test %.4f (%.1fs)",
                config.architecture, best_step, best_validation, best_test,
                time.perf_counter() - started)
    return TrainResult(node_ids=eval_ids, scores=best_scores,
                       best_step=best_step, best_validation=best_validation,
                       validation_history=tuple(history), test_metric=best_test)


def train_and_write(data: GraphData, splits: list[SplitIndices],
                    split_index: int, config: ModelConfig,
                    out_dir: str | Path) -> Path:
    result = train_model(data, splits[split_index], config)
    path = Path(out_dir) / config.architecture / f"split_{split_index}.csv"
    write_predictions(path, result.node_ids, result.scores)
    return path
