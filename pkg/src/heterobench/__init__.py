"""Toolkit for auditing, constructing, and benchmarking heterophilous
node-classification graph datasets."""

from .dedup import (DuplicateReport, filter_duplicates, find_duplicates,
                    leakage_report, neighborhood_match_predict)
from .errors import ValidationError
from .evaluation import (ResultTable, accuracy, aggregate, rank_models,
                         roc_auc, score_predictions)
from .graph import Dataset, Graph, Split, SplitSet, build_graph, symmetrize
from .importer import bucket_regression_target, import_raw
from .metrics import (StatReport, adjusted_homophily, avg_local_clustering,
                      diameter, edge_homophily, global_clustering,
                      label_informativeness, node_homophily, stat_report)
from .minesweeper import MinesweeperConfig, generate_minesweeper
from .splits import filter_split_set, generate_splits
from .storage import (Predictions, load_dataset, load_predictions,
                      load_splits, save_dataset, save_predictions, save_splits)

__version__ = "0.1.0"

__all__ = [
    "Dataset", "Graph", "Split", "SplitSet", "build_graph", "symmetrize",
    "ValidationError",
    "save_dataset", "load_dataset", "save_splits", "load_splits",
    "Predictions", "save_predictions", "load_predictions",
    "bucket_regression_target", "import_raw",
    "StatReport", "stat_report", "edge_homophily", "node_homophily",
    "adjusted_homophily", "label_informativeness", "global_clustering",
    "avg_local_clustering", "diameter",
    "DuplicateReport", "find_duplicates", "filter_duplicates",
    "neighborhood_match_predict", "leakage_report",
    "MinesweeperConfig", "generate_minesweeper",
    "generate_splits", "filter_split_set",
    "accuracy", "roc_auc", "aggregate", "rank_models", "score_predictions",
    "ResultTable",
]
