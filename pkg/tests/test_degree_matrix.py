import numpy as np
import pytest
from hypothesis import given, strategies as st

from dmcalign.degree_matrix import (
    DegreeMatrix,
    build_degree_matrices,
    build_weighted_degree_matrices,
    degree_matrix,
    permute_rows,
)
from dmcalign.graph import Graph, relabel_shuffle

from conftest import F1_MATRIX, F2_MATRIX, graph_from_labelled, graphs


def test_worked_example_matrices(f1, f2):
    M1, M2 = build_degree_matrices(f1, f2)
    assert M1.rows.tolist() == F1_MATRIX
    assert M2.rows.tolist() == F2_MATRIX
    assert M1.m == M2.m == 4
    assert M1.rows.dtype.kind == "i"


def _hub_neighborhood():
    # origin o with neighbors of degree 3,4,3,5,3 (leaves pad the degrees)
    edges, labels = [], ["o"]
    for name, d in zip("abcde", [3, 4, 3, 5, 3]):
        labels.append(name)
        edges.append(("o", name))
        for t in range(d - 1):
            leaf = f"{name}{t}"
            labels.append(leaf)
            edges.append((name, leaf))
    return graph_from_labelled(labels, edges)


def test_hub_row_padded_to_ten():
    g = _hub_neighborhood()
    M = degree_matrix(g, m=10)
    assert M.rows[g.index_of("o")].tolist() == [3, 3, 3, 4, 5, 0, 0, 0, 0, 0]


def test_hub_row_in_pair():
    g = _hub_neighborhood()  # 19 nodes
    star = Graph.from_edges([str(i) for i in range(19)], [(0, i) for i in range(1, 11)])
    M1, M2 = build_degree_matrices(g, star)
    assert M1.m == 10
    assert M1.rows[g.index_of("o")].tolist() == [3, 3, 3, 4, 5, 0, 0, 0, 0, 0]
    assert M2.rows[0].tolist() == [1] * 10
    assert M2.rows[15].tolist() == [0] * 10  # isolated node


def test_unequal_order_rejected(f1):
    with pytest.raises(ValueError):
        build_degree_matrices(f1, Graph.from_edges("ab", [(0, 1)]))


def test_narrow_width_rejected(f1):
    with pytest.raises(ValueError):
        degree_matrix(f1, m=3)


def test_unit_weights_match_plain(f1, f2):
    w1 = f1.with_weights(np.ones(f1.edge_count))
    w2 = f2.with_weights(np.ones(f2.edge_count))
    W1, W2 = build_weighted_degree_matrices(w1, w2)
    M1, M2 = build_degree_matrices(f1, f2)
    assert np.array_equal(W1.rows, M1.rows.astype(np.float64))
    assert np.array_equal(W2.rows, M2.rows.astype(np.float64))


def test_weighted_path():
    g = graph_from_labelled("abc", [("a", "b"), ("b", "c")], [2.0, 0.5], weighted=True)
    W, _ = build_weighted_degree_matrices(g, g)
    assert W.rows[g.index_of("b")].tolist() == [0.5, 2.0]
    # a's neighbor b has degree 2, weight 2
    assert W.rows[g.index_of("a")].tolist() == [4.0, 0.0]


def test_weighted_single_edge():
    g = Graph.from_edges("ab", [(0, 1)], [3.0], weighted=True)
    W, _ = build_weighted_degree_matrices(g, g)
    assert W.rows.tolist() == [[3.0], [3.0]]


def test_weighted_needs_weighted_graphs(f1):
    with pytest.raises(ValueError):
        build_weighted_degree_matrices(f1, f1)


def test_weighted_sorts_after_weighting():
    # b's neighbors: a (deg 1, w 10) and c (deg 2, w 1)
    g = graph_from_labelled("abcd", [("a", "b"), ("b", "c"), ("c", "d")], [10.0, 1.0, 1.0], weighted=True)
    W, _ = build_weighted_degree_matrices(g, g)
    assert W.rows[g.index_of("b")].tolist() == [2.0, 10.0]


def test_permute_identity_inverse_compose(f1):
    M = degree_matrix(f1)
    assert permute_rows(M, np.arange(5)) == M
    p = np.array([3, 0, 4, 1, 2])
    q = np.array([1, 2, 0, 4, 3])
    assert permute_rows(permute_rows(M, p), np.argsort(p)) == M
    # row i goes to p[i], then to q[p[i]]
    assert permute_rows(permute_rows(M, p), q) == permute_rows(M, q[p])
    moved = permute_rows(M, p)
    assert moved.rows[3].tolist() == M.rows[0].tolist() and moved.node_of_row[3] == 0


@pytest.mark.parametrize("perm", [[0, 0, 1, 2, 3], [0, 1, 2], [0, 1, 2, 3, 5]])
def test_permute_rejects_non_permutations(f1, perm):
    with pytest.raises(ValueError):
        permute_rows(degree_matrix(f1), perm)


def test_dump_csv(tmp_path, f1):
    degree_matrix(f1).to_csv(tmp_path / "m.csv")
    assert (tmp_path / "m.csv").read_text().splitlines()[1] == "1,3,3,3"


def _row_multiset(M):
    return sorted(map(tuple, M.rows.tolist()))


@given(graphs(), st.integers(0, 2**32 - 1))
def test_shuffle_keeps_row_multiset(g, seed):
    h, _ = relabel_shuffle(g, seed)
    A, _ = build_degree_matrices(g, g)
    B, _ = build_degree_matrices(h, g)
    assert _row_multiset(A) == _row_multiset(B)


@given(graphs(weighted=True))
def test_rows_sorted_and_counted(g):
    deg = g.degrees()
    for weighted in (False, True):
        M = degree_matrix(g, weighted=weighted)
        for i, row in enumerate(M.rows):
            nz = row[: deg[i]]
            assert np.all(nz > 0) and np.all(np.diff(nz) >= 0)
            assert np.all(row[deg[i]:] == 0)
        if not weighted:
            sums = [deg[g.neighbors(i)].sum() for i in range(g.n)]
            assert M.rows.sum(axis=1).tolist() == sums


@given(graphs())
def test_unit_weight_bit_identical(g):
    w = g.with_weights(np.ones(g.edge_count))
    assert np.array_equal(degree_matrix(w, weighted=True).rows, degree_matrix(g).rows.astype(float))


def test_degree_matrix_equality_is_by_value(f1):
    a, b = degree_matrix(f1), degree_matrix(f1)
    assert a == b and a is not b
    assert a != DegreeMatrix(a.rows + 1, a.node_of_row)
