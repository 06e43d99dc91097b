import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heterobench import (Predictions, ValidationError, accuracy, aggregate,
                         generate_splits, rank_models, roc_auc,
                         save_predictions, score_predictions)
from heterobench.evaluation import roc_auc_predictions, score_model
from heterobench.storage import predictions_filename
from conftest import make_dataset
from heterobench import build_graph
from oracles import mean_std_oracle, roc_auc_pair_oracle


def preds_for(node_ids, scores):
    return Predictions(node_ids=np.asarray(node_ids, dtype=np.int64),
                       scores=np.asarray(scores, dtype=np.float64))


def test_accuracy_all_correct_one_hot():
    labels = np.array([2, 0, 1])
    preds = preds_for([0, 1, 2], [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert accuracy(preds, labels, np.array([0, 1, 2]), 3) == 1.0


def test_accuracy_tie_rule_forces_class_zero():
    labels = np.array([0, 3, 2, 0])
    uniform = preds_for(range(4), np.full((4, 5), 0.2))
    assert accuracy(uniform, labels, np.arange(4), 5) == 0.5  # nodes 0 and 3


def test_accuracy_matches_argmax_oracle():
    rng = np.random.default_rng(0)
    labels = rng.integers(0, 4, size=200)
    scores = rng.random((200, 4))
    preds = preds_for(np.arange(200), scores)
    node_set = rng.choice(200, size=120, replace=False)
    expected = np.mean([int(np.argmax(scores[v])) == labels[v] for v in node_set])
    assert accuracy(preds, labels, node_set, 4) == pytest.approx(expected, abs=0)


def test_accuracy_missing_row_and_width_errors():
    labels = np.array([0, 1])
    preds = preds_for([0], [[1.0, 0.0]])
    with pytest.raises(ValidationError, match="no prediction row"):
        accuracy(preds, labels, np.array([0, 1]), 2)
    with pytest.raises(ValidationError, match="width"):
        accuracy(preds, labels, np.array([0]), 3)


def test_accuracy_invariant_under_positive_row_rescaling():
    rng = np.random.default_rng(5)
    scores = rng.random((50, 3))
    labels = rng.integers(0, 3, size=50)
    scale = rng.uniform(0.1, 10.0, size=(50, 1))
    a = accuracy(preds_for(np.arange(50), scores), labels, np.arange(50), 3)
    b = accuracy(preds_for(np.arange(50), scores * scale), labels, np.arange(50), 3)
    assert a == b


def test_roc_auc_perfect_and_all_ties():
    labels = np.array([0, 0, 1, 1])
    assert roc_auc(np.array([0.1, 0.2, 0.8, 0.9]), labels) == 1.0
    assert roc_auc(np.zeros(4), labels) == 0.5


def test_roc_auc_single_class_rejected():
    with pytest.raises(ValidationError):
        roc_auc(np.array([0.1, 0.2]), np.array([1, 1]))


@pytest.mark.parametrize("seed", range(10))
def test_roc_auc_matches_pair_counting_oracle_with_ties(seed):
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, size=50)
    if labels.min() == labels.max():
        labels[0] = 1 - labels[0]
    scores = rng.integers(0, 6, size=50) / 5.0  # coarse grid forces many ties
    assert roc_auc(scores, labels) == pytest.approx(
        roc_auc_pair_oracle(scores, labels), abs=1e-12)


def test_roc_auc_symmetry_and_range():
    rng = np.random.default_rng(3)
    labels = rng.integers(0, 2, size=80)
    labels[:2] = [0, 1]
    scores = rng.random(80)
    value = roc_auc(scores, labels)
    assert 0.0 <= value <= 1.0
    assert roc_auc(-scores, 1 - labels) == pytest.approx(value, abs=1e-12)


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 10_000))
def test_roc_auc_invariant_under_monotone_transform(seed):
    rng = np.random.default_rng(seed)
    labels = rng.integers(0, 2, size=30)
    if labels.min() == labels.max():
        labels[0] = 1 - labels[0]
    scores = rng.random(30)
    assert roc_auc(np.exp(3 * scores), labels) == pytest.approx(
        roc_auc(scores, labels), abs=1e-12)


def test_aggregate_textbook_cases():
    assert aggregate([0.5, 0.5, 0.5]) == (0.5, 0.0)
    mean, std = aggregate([1, 2, 3])
    assert (mean, std) == (2.0, 1.0)
    with pytest.raises(ValidationError):
        aggregate([1.0])


def test_aggregate_matches_two_pass_oracle():
    rng = np.random.default_rng(8)
    values = rng.random(10) * 100
    mean, std = aggregate(values)
    expected_mean, expected_std = mean_std_oracle(values)
    assert mean == pytest.approx(expected_mean, rel=1e-12)
    assert std == pytest.approx(expected_std, rel=1e-12)


ORIGINAL_SQUIRREL_MEANS = {
    "ResNet": 33.88, "ResNet+SGC": 34.36, "ResNet+adj": 65.46,
    "GCN": 39.06, "SAGE": 35.83, "GAT": 32.21, "GAT-sep": 35.72,
    "GT": 31.61, "GT-sep": 36.08, "H2GCN": 29.45, "CPGNN": 30.91,
    "GPR-GNN": 33.39, "FSGNN": 68.93, "GloGNN": 61.21, "FAGCN": 47.63,
    "GBK-GNN": 37.06, "JacobiConv": 46.17,
}


def test_published_means_rank_fsgnn_first():
    ranks = rank_models(ORIGINAL_SQUIRREL_MEANS)
    assert ranks["FSGNN"] == 1
    assert ranks["ResNet+adj"] == 2
    assert ranks["GloGNN"] == 3
    assert sorted(ranks.values()) == list(range(1, 18))


def test_rank_single_model_and_order_invariance():
    assert rank_models({"only": 1.23}) == {"only": 1}
    shuffled = dict(reversed(list(ORIGINAL_SQUIRREL_MEANS.items())))
    assert rank_models(shuffled) == rank_models(ORIGINAL_SQUIRREL_MEANS)


def test_competition_ranking_ties_share_min_rank():
    ranks = rank_models({"a": 3.0, "b": 3.0, "c": 2.0, "d": 1.0})
    assert ranks == {"a": 1, "b": 1, "c": 3, "d": 4}


def test_rank_invariant_under_increasing_transform():
    transformed = {k: np.log(v) for k, v in ORIGINAL_SQUIRREL_MEANS.items()}
    assert rank_models(transformed) == rank_models(ORIGINAL_SQUIRREL_MEANS)


def _binary_dataset(n=40, seed=0):
    rng = np.random.default_rng(seed)
    edges = [(i, (i + 1) % n) for i in range(n)]
    g = build_graph(edges, n, directed=False)
    return make_dataset(g, rng.integers(0, 2, size=n), num_classes=2, name="toy")


def test_score_model_over_prediction_files(tmp_path):
    ds = _binary_dataset()
    splits = generate_splits(ds.num_nodes, num_splits=3, seed=0)
    rng = np.random.default_rng(1)
    for i, split in enumerate(splits):
        nodes = np.union1d(split.validation, split.test)
        scores = rng.random((len(nodes), 2))
        save_predictions(tmp_path / "mymodel" / predictions_filename(i),
                         preds_for(nodes, scores))
    result = score_model(ds, splits, tmp_path / "mymodel", "mymodel")
    assert result.metric == "roc_auc"
    assert len(result.per_split) == 3
    assert all(0.0 <= v <= 1.0 for v in result.per_split)
    table = score_predictions(ds, splits, tmp_path / "mymodel")
    assert table.metric == "roc_auc"
    assert table.results[0].model == "mymodel"
    assert "±" in table.as_table()


def test_score_rejects_rows_outside_evaluation_set(tmp_path):
    ds = _binary_dataset()
    splits = generate_splits(ds.num_nodes, num_splits=1, seed=0)
    split = splits.splits[0]
    nodes = np.concatenate([split.test, split.train[:1]])  # train row sneaks in
    scores = np.random.default_rng(0).random((len(nodes), 2))
    save_predictions(tmp_path / "m" / predictions_filename(0), preds_for(nodes, scores))
    with pytest.raises(ValidationError, match="outside the"):
        score_model(ds, splits, tmp_path / "m", "m")


def test_score_missing_split_file(tmp_path):
    ds = _binary_dataset()
    splits = generate_splits(ds.num_nodes, num_splits=2, seed=0)
    (tmp_path / "m").mkdir()
    with pytest.raises(ValidationError, match="missing prediction file"):
        score_model(ds, splits, tmp_path / "m", "m")


def test_multiclass_dataset_scored_by_accuracy(tmp_path):
    n = 20
    g = build_graph([(i, (i + 1) % n) for i in range(n)], n, directed=False)
    ds = make_dataset(g, np.arange(n) % 3, num_classes=3, name="mc")
    splits = generate_splits(n, num_splits=2, seed=1)
    for i, split in enumerate(splits):
        nodes = np.union1d(split.validation, split.test)
        onehot = np.eye(3)[ds.labels[nodes]]
        save_predictions(tmp_path / "exact" / predictions_filename(i),
                         preds_for(nodes, onehot))
    result = score_model(ds, splits, tmp_path / "exact", "exact")
    assert result.metric == "accuracy"
    assert result.per_split == (1.0, 1.0)
    assert result.mean == 1.0 and result.std == 0.0
