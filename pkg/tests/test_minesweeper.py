import filecmp
import json

import numpy as np
import pytest

from heterobench import (MinesweeperConfig, ValidationError,
                         generate_minesweeper, load_dataset, save_dataset)
from heterobench.minesweeper import FEATURE_DIM, king_graph_edges


def king_edge_count(r, c):
    return r * (c - 1) + c * (r - 1) + 2 * (r - 1) * (c - 1)


@pytest.mark.parametrize("r,c", [(2, 2), (3, 5), (7, 4), (100, 100)])
def test_king_graph_edge_count_formula(r, c):
    assert len(king_graph_edges(r, c)) == king_edge_count(r, c)


def test_default_generation_counts():
    ds = generate_minesweeper()
    assert ds.num_nodes == 10000
    assert ds.graph.num_edges == 39402
    assert int(ds.labels.sum()) == 2000
    assert int(ds.features[:, FEATURE_DIM - 1].sum()) == 5000
    assert ds.task == "binary"
    assert ds.num_classes == 2


def test_grid_degrees():
    ds = generate_minesweeper(MinesweeperConfig(rows=6, cols=7, seed=3))
    deg = ds.graph.degrees
    grid = deg.reshape(6, 7)
    assert grid[0, 0] == grid[0, -1] == grid[-1, 0] == grid[-1, -1] == 3
    assert np.all(grid[0, 1:-1] == 5) and np.all(grid[1:-1, 0] == 5)
    assert np.all(grid[1:-1, 1:-1] == 8)


def test_regeneration_is_byte_identical(tmp_path):
    config = MinesweeperConfig(rows=5, cols=5, seed=1)
    save_dataset(generate_minesweeper(config), tmp_path / "a")
    save_dataset(generate_minesweeper(config), tmp_path / "b")
    names = ["meta.json", "edges.csv", "labels.csv", "features.csv"]
    match, mismatch, errors = filecmp.cmpfiles(tmp_path / "a", tmp_path / "b",
                                               names, shallow=False)
    assert match == names and not mismatch and not errors


def test_default_directory_round_trip(tmp_path):
    ds = generate_minesweeper()
    root = save_dataset(ds, tmp_path / "ms")
    meta = json.loads((root / "meta.json").read_text())
    assert meta["num_edges"] == 39402
    assert meta["num_nodes"] == 10000
    assert meta["feature_dim"] == FEATURE_DIM
    assert load_dataset(root) == ds


def test_different_seeds_differ():
    a = generate_minesweeper(MinesweeperConfig(rows=10, cols=10, seed=1))
    b = generate_minesweeper(MinesweeperConfig(rows=10, cols=10, seed=2))
    assert not np.array_equal(a.labels, b.labels)


def test_features_match_brute_force_recount():
    config = MinesweeperConfig(rows=5, cols=5, seed=1)
    ds = generate_minesweeper(config)
    mines = set(np.flatnonzero(ds.labels).tolist())
    for v in range(ds.num_nodes):
        recount = sum(1 for u in ds.graph.out_neighbors(v) if u in mines)
        row = ds.features[v]
        if row[FEATURE_DIM - 1] == 1.0:
            assert row[:FEATURE_DIM - 1].sum() == 0.0
        else:
            assert row[recount] == 1.0
            assert row.sum() == 1.0


def test_feature_block_invariants():
    ds = generate_minesweeper(MinesweeperConfig(rows=20, cols=20, seed=9))
    hidden = ds.features[:, FEATURE_DIM - 1] == 1.0
    onehot = ds.features[:, :FEATURE_DIM - 1]
    assert np.all(onehot[hidden].sum(axis=1) == 0.0)
    assert np.all(onehot[~hidden].sum(axis=1) == 1.0)
    assert np.all(ds.features[~hidden, FEATURE_DIM - 1] == 0.0)


def test_mine_and_hidden_counts_rounded():
    config = MinesweeperConfig(rows=9, cols=9, mine_fraction=0.3,
                               hidden_fraction=0.25, seed=0)
    ds = generate_minesweeper(config)
    assert int(ds.labels.sum()) == round(0.3 * 81)
    assert int(ds.features[:, FEATURE_DIM - 1].sum()) == round(0.25 * 81)


def test_config_validation():
    with pytest.raises(ValidationError):
        MinesweeperConfig(rows=1, cols=1)
    with pytest.raises(ValidationError):
        MinesweeperConfig(mine_fraction=0.0)
    with pytest.raises(ValidationError):
        MinesweeperConfig(hidden_fraction=1.5)
