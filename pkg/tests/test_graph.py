import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heterobench import Dataset, Split, SplitSet, ValidationError, build_graph, symmetrize
from oracles import dense_adjacency, undirected_dense


def edge_lists(max_nodes=12):
    return st.integers(min_value=2, max_value=max_nodes).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                     max_size=40),
        )
    )


def test_triangle():
    g = build_graph([(0, 1), (1, 2), (2, 0)], 3, directed=False)
    assert g.num_edges == 3
    assert list(g.degrees) == [2, 2, 2]
    assert not g.directed


def test_self_loops_and_parallel_edges_dropped():
    g = build_graph([(0, 1), (0, 1), (1, 1)], 2, directed=True)
    assert g.num_edges == 1
    assert list(g.out_neighbors(0)) == [1]
    assert g.in_degrees[1] == 1 and g.in_degrees[0] == 0


def test_empty_graph_allowed_but_zero_nodes_rejected():
    g = build_graph([], 3, directed=False)
    assert g.num_edges == 0
    with pytest.raises(ValidationError):
        build_graph([], 0, directed=False)


def test_out_of_range_endpoint_rejected():
    with pytest.raises(ValidationError, match="outside"):
        build_graph([(0, 3)], 3, directed=True)
    with pytest.raises(ValidationError):
        build_graph([(-1, 0)], 3, directed=True)


@settings(deadline=None, max_examples=60)
@given(edge_lists())
def test_build_graph_order_insensitive(case):
    n, edges = case
    g1 = build_graph(edges, n, directed=True)
    g2 = build_graph(list(reversed(edges)), n, directed=True)
    assert g1 == g2
    u1 = build_graph(edges, n, directed=False)
    u2 = build_graph(list(reversed(edges)), n, directed=False)
    assert u1 == u2


@settings(deadline=None, max_examples=60)
@given(edge_lists())
def test_undirected_degree_sum_and_symmetry(case):
    n, edges = case
    g = build_graph(edges, n, directed=False)
    assert g.degrees.sum() == 2 * g.num_edges
    adj = dense_adjacency(g)
    assert np.array_equal(adj, adj.T)
    assert not adj.diagonal().any()
    g.validate()


def test_symmetrize_single_arc():
    g = symmetrize(build_graph([(0, 1)], 2, directed=True))
    assert not g.directed
    assert g.num_edges == 1
    assert list(g.out_neighbors(1)) == [0]


def test_symmetrize_identity_on_undirected():
    g = build_graph([(0, 1), (1, 2)], 3, directed=False)
    assert symmetrize(g) is g
    assert symmetrize(symmetrize(g)) == symmetrize(g)


def test_symmetrize_matches_set_union_oracle():
    rng = np.random.default_rng(0)
    mask = rng.random((50, 50)) < 0.08
    np.fill_diagonal(mask, False)
    edges = np.column_stack(np.nonzero(mask))
    g = build_graph(edges, 50, directed=True)
    sym = symmetrize(g)
    assert np.array_equal(dense_adjacency(sym), undirected_dense(g))
    assert sym.num_edges == undirected_dense(g).sum() // 2


def test_dataset_validation():
    g = build_graph([(0, 1), (1, 2), (2, 0)], 3, directed=False)
    features = np.zeros((3, 2))
    with pytest.raises(ValidationError, match="binary"):
        Dataset(g, np.array([0, 1, 2]), 3, features, "binary", "x")
    with pytest.raises(ValidationError, match="label"):
        Dataset(g, np.array([0, 1, 5]), 3, features, "multiclass", "x")
    with pytest.raises(ValidationError, match="labels length"):
        Dataset(g, np.array([0, 1]), 2, features, "binary", "x")
    with pytest.raises(ValidationError, match="features"):
        Dataset(g, np.array([0, 1, 1]), 2, np.zeros((2, 2)), "binary", "x")
    with pytest.raises(ValidationError, match="regression_target"):
        Dataset(g, np.array([0, 1, 1]), 2, features, "binary", "x",
                regression_target=np.array([1, 2]))


def test_splitset_partition_enforced():
    ok = SplitSet(
        splits=(Split(np.array([0, 1]), np.array([2]), np.array([3])),),
        seed=0, num_nodes=4)
    assert len(ok) == 1
    with pytest.raises(ValidationError, match="partition"):
        SplitSet(splits=(Split(np.array([0, 1]), np.array([1]), np.array([3])),),
                 seed=0, num_nodes=4)
    with pytest.raises(ValidationError, match="empty test"):
        SplitSet(splits=(Split(np.array([0, 1, 3]), np.array([2]), np.array([], dtype=np.int64)),),
                 seed=0, num_nodes=4)
