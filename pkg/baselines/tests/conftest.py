import json
import subprocess
import sys

import numpy as np
import pytest

from gnnbaselines import GraphData, SplitIndices


@pytest.fixture
def tiny_dataset(tmp_path):
    """Hand-written 12-node undirected binary dataset directory + splits."""
    root = tmp_path / "tiny"
    root.mkdir()
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
             (6, 7), (7, 8), (8, 9), (9, 10), (10, 11), (11, 6),
             (0, 6), (3, 9)]
    labels = [0, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 0]
    rng = np.random.default_rng(0)
    feats = rng.random((12, 4))
    (root / "meta.json").write_text(json.dumps({
        "name": "tiny", "task": "binary", "directed": False,
        "num_nodes": 12, "num_edges": len(edges), "num_classes": 2,
        "feature_dim": 4, "has_target": False}))
    (root / "edges.csv").write_text(
        "source,target\n" + "".join(f"{u},{v}\n" for u, v in edges))
    (root / "labels.csv").write_text(
        "node_id,label\n" + "".join(f"{i},{y}\n" for i, y in enumerate(labels)))
    (root / "features.csv").write_text(
        "node_id,f0,f1,f2,f3\n" + "".join(
            f"{i}," + ",".join(repr(x) for x in row) + "\n"
            for i, row in enumerate(feats.tolist())))
    (root / "splits.json").write_text(json.dumps({
        "seed": 0, "num_nodes": 12,
        "splits": [
            {"train": [0, 2, 4, 6, 8, 10], "validation": [1, 5, 9],
             "test": [3, 7, 11]},
            {"train": [1, 3, 5, 7, 9, 11], "validation": [0, 4, 8],
             "test": [2, 6, 10]},
        ]}))
    return root


def ring_graph_data(n=10, feature_dim=3, num_classes=2, seed=0) -> GraphData:
    rng = np.random.default_rng(seed)
    src = np.concatenate([np.arange(n), (np.arange(n) + 1) % n])
    dst = np.concatenate([(np.arange(n) + 1) % n, np.arange(n)])
    return GraphData(name="ring", task="binary" if num_classes == 2 else "multiclass",
                     num_nodes=n, num_classes=num_classes,
                     edge_src=src, edge_dst=dst,
                     labels=rng.integers(0, num_classes, size=n),
                     features=rng.random((n, feature_dim)))


def simple_split(n=10) -> SplitIndices:
    ids = np.arange(n)
    return SplitIndices(train=ids[: n // 2],
                        validation=ids[n // 2: n // 2 + n // 4],
                        test=ids[n // 2 + n // 4:])


@pytest.fixture(scope="session")
def minesweeper_dir(tmp_path_factory):
    """Generate the minesweeper benchmark through the toolkit CLI (the
    external interface this package consumes)."""
    root = tmp_path_factory.mktemp("data") / "minesweeper"
    subprocess.run(
        [sys.executable, "-m", "heterobench.cli", "generate", "minesweeper",
         "--seed", "0", "--out", str(root)],
        check=True, capture_output=True, text=True)
    subprocess.run(
        [sys.executable, "-m", "heterobench.cli", "splits", "generate",
         str(root), "-n", "10", "--seed", "0"],
        check=True, capture_output=True, text=True)
    return root
