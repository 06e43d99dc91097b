import numpy as np
import pytest

from heterobench import Dataset, build_graph


@pytest.fixture
def triangle_dataset() -> Dataset:
    graph = build_graph([(0, 1), (1, 2), (2, 0)], 3, directed=False)
    return Dataset(
        graph=graph,
        labels=np.array([0, 0, 1]),
        num_classes=2,
        features=np.array([[1.0, 0.5], [0.25, 0.125], [0.1, 2.0]]),
        task="binary",
        name="triangle",
    )


def make_dataset(graph, labels, num_classes=None, feature_dim=3, seed=0,
                 target=None, name="random") -> Dataset:
    rng = np.random.default_rng(seed)
    labels = np.asarray(labels, dtype=np.int64)
    if num_classes is None:
        num_classes = max(int(labels.max()) + 1, 2)
    return Dataset(
        graph=graph,
        labels=labels,
        num_classes=num_classes,
        features=rng.random((graph.num_nodes, feature_dim)),
        task="binary" if num_classes == 2 else "multiclass",
        name=name,
        regression_target=None if target is None else np.asarray(target, dtype=np.int64),
    )
