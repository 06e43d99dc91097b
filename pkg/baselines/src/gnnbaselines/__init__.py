"""Baseline node-classification models writing prediction files in the
benchmark toolkit's exchange format."""

from .data import GraphData, SplitIndices, load_dataset_dir, load_splits_file
from .features import adjacency_augment, sgc_precompute
from .models import ARCHITECTURES, GraphTensors, ModelConfig, NodeClassifier
from .training import TrainResult, train_and_write, train_model

__all__ = [
    "ARCHITECTURES", "ModelConfig", "NodeClassifier", "GraphTensors",
    "GraphData", "SplitIndices", "load_dataset_dir", "load_splits_file",
    "sgc_precompute", "adjacency_augment",
    "TrainResult", "train_model", "train_and_write",
]
