"""Deterministic generator for the Minesweeper benchmark dataset.

Cells of an r x c grid are connected 8-directionally (a king graph), a fixed
fraction of cells are mines, and the task is telling mines from free cells.
Each visible cell carries a one-hot encoding of how many of its neighbors
are mines; a fixed fraction of cells instead have their count withheld,
marked by an indicator feature. Given a seed, the generated dataset is
byte-identical across runs and platforms (see rng for the generator spec).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import Dataset, build_graph
from .rng import Xoshiro256StarStar

# 9 possible neighbor-mine counts (0..8) one-hot, plus the hidden indicator.
FEATURE_DIM = 10


@dataclass(frozen=True)
class MinesweeperConfig:
    rows: int = 100
    cols: int = 100
    mine_fraction: float = 0.2
    hidden_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.rows * self.cols < 2:
            raise ValidationError("grid needs at least 2 cells")
        if not 0.0 < self.mine_fraction < 1.0:
            raise ValidationError(f"mine_fraction must be in (0, 1), got {self.mine_fraction}")
        if not 0.0 <= self.hidden_fraction <= 1.0:
            raise ValidationError(
                f"hidden_fraction must be in [0, 1], got {self.hidden_fraction}")


def king_graph_edges(rows: int, cols: int) -> np.ndarray:
    """Edges of the rows x cols king graph, each unordered pair once.

    Edge count is r(c-1) + c(r-1) + 2(r-1)(c-1).
    """
    idx = np.arange(rows * cols, dtype=np.int64).reshape(rows, cols)
    pieces = []
    for dr, dc in ((0, 1), (1, 0), (1, 1), (1, -1)):
        src_rows = slice(0, rows - dr)
        dst_rows = slice(dr, rows)
        src_cols = slice(max(0, -dc), cols - max(0, dc))
        dst_cols = slice(max(0, dc), cols - max(0, -dc))
        pieces.append(np.column_stack([idx[src_rows, src_cols].ravel(),
                                       idx[dst_rows, dst_cols].ravel()]))
    return np.concatenate(pieces)


def _neighbor_mine_counts(mine_grid: np.ndarray) -> np.ndarray:
    rows, cols = mine_grid.shape
    padded = np.zeros((rows + 2, cols + 2), dtype=np.int64)
    padded[1:-1, 1:-1] = mine_grid
    counts = np.zeros((rows, cols), dtype=np.int64)
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            counts += padded[1 + dr:rows + 1 + dr, 1 + dc:cols + 1 + dc]
    return counts


def generate_minesweeper(config: MinesweeperConfig = MinesweeperConfig()) -> Dataset:
    n = config.rows * config.cols
    graph = build_graph(king_graph_edges(config.rows, config.cols), n, directed=False)

    rng = Xoshiro256StarStar(config.seed)
    num_mines = round(config.mine_fraction * n)
    num_hidden = round(config.hidden_fraction * n)
    # fixed draw order (mines, then hidden cells) is part of the format
    mines = rng.sample(n, num_mines)
    hidden = rng.sample(n, num_hidden)

    labels = np.zeros(n, dtype=np.int64)
    labels[mines] = 1

    counts = _neighbor_mine_counts(labels.reshape(config.rows, config.cols)).ravel()
    features = np.zeros((n, FEATURE_DIM), dtype=np.float64)
    features[np.arange(n), counts] = 1.0
    features[hidden, :FEATURE_DIM - 1] = 0.0
    features[hidden, FEATURE_DIM - 1] = 1.0

    return Dataset(graph=graph, labels=labels, num_classes=2,
                   features=features, task="binary", name="minesweeper")
