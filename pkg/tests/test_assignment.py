import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import linear_sum_assignment

from dmcalign.assignment import cost_matrix, greedy_hungarian, greedy_prefilter, hungarian
from dmcalign.degree_matrix import build_degree_matrices

from conftest import F1_MATRIX, F2_MATRIX, brute_force_min, sq_dist_loop


def test_hub_vs_uniform_row():
    k = 10
    C = cost_matrix(np.array([[k] + [0] * (k - 1)]), np.ones((1, k)))
    assert C[0, 0] == k * (k - 1) == 90


def test_uniform_vs_shifted_row():
    k, eps = 10, 0.5
    C = cost_matrix(np.ones((1, k)), np.full((1, k), 1 + eps))
    assert C[0, 0] == pytest.approx(k * eps**2) == 2.5


def test_identical_rows_cost_zero():
    rows = np.array([[1, 2, 3], [2, 2, 0]])
    assert np.all(np.diag(cost_matrix(rows, rows)) == 0)


def test_cost_matches_loop_oracle():
    C = cost_matrix(np.array(F1_MATRIX), np.array(F2_MATRIX))
    assert C.tolist() == sq_dist_loop(F1_MATRIX, F2_MATRIX)


def test_cost_shape_mismatch():
    with pytest.raises(ValueError):
        cost_matrix(np.zeros((3, 2)), np.zeros((3, 3)))


def test_hungarian_identity():
    C = 1 - np.eye(6)
    sol = hungarian(C)
    assert sol.mapping.tolist() == list(range(6)) and sol.total_cost == 0


def test_hungarian_worked_example(f1, f2):
    M1, M2 = build_degree_matrices(f1, f2)
    sol = hungarian(cost_matrix(M1, M2))
    assert (sol.mapping + 1).tolist() == [2, 5, 1, 3, 4]
    assert sol.total_cost == 38


def test_hungarian_rejects_non_finite():
    with pytest.raises(ValueError):
        hungarian(np.array([[0.0, np.inf], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        hungarian(np.zeros((2, 3)))


def test_hungarian_tie_break_lowest_column():
    sol = hungarian(np.zeros((4, 4)))
    assert sol.mapping.tolist() == [0, 1, 2, 3]


def test_hungarian_deterministic():
    rng = np.random.default_rng(0)
    C = rng.integers(0, 3, size=(30, 30)).astype(float)  # many ties
    assert np.array_equal(hungarian(C).mapping, hungarian(C.copy()).mapping)


def _square(max_n=7, ints=False):
    elems = st.integers(0, 9) if ints else st.floats(0, 100, allow_nan=False)
    return st.integers(1, max_n).flatmap(lambda n: arrays(np.float64, (n, n), elements=elems))


@settings(max_examples=200)
@given(_square())
def test_hungarian_matches_brute_force(C):
    sol = hungarian(C)
    assert sorted(sol.mapping.tolist()) == list(range(len(C)))
    assert sol.total_cost == pytest.approx(brute_force_min(C), abs=1e-9)
    assert sol.total_cost == pytest.approx(C[np.arange(len(C)), sol.mapping].sum())


@given(arrays(np.int64, st.tuples(st.integers(1, 6), st.integers(1, 4)), elements=st.integers(0, 20)), st.data())
def test_cost_symmetric(a, data):
    b = data.draw(arrays(np.int64, a.shape, elements=st.integers(0, 20)))
    assert np.array_equal(cost_matrix(a, b).T, cost_matrix(b, a))


@given(_square(ints=True), st.integers(1, 50))
def test_constant_shift(C, c):
    base, shifted = hungarian(C), hungarian(C + c)
    assert shifted.total_cost == base.total_cost + len(C) * c
    assert np.array_equal(base.mapping, shifted.mapping)


def test_prefilter_saturates_on_distinct_equal_matrices():
    rng = np.random.default_rng(1)
    M = rng.permutation(40).reshape(10, 4)
    fixed, rows, cols = greedy_prefilter(cost_matrix(M, M), 0)
    assert sorted(fixed) == [(i, i) for i in range(10)]
    assert len(rows) == len(cols) == 0


def test_prefilter_no_exact_matches():
    M1 = np.arange(12).reshape(6, 2)
    fixed, rows, cols = greedy_prefilter(cost_matrix(M1, M1 + 100), 0)
    assert fixed == [] and rows.tolist() == cols.tolist() == list(range(6))


def test_prefilter_huge_epsilon_is_pure_greedy():
    C = np.array([[1.0, 2.0], [1.5, 100.0]])
    fixed, rows, _ = greedy_prefilter(C, 1e9)
    # row 0 grabs column 0 first, leaving row 1 the expensive column
    assert sorted(fixed) == [(0, 0), (1, 1)] and len(rows) == 0
    assert greedy_hungarian(C, 1e9).total_cost == 101 > hungarian(C).total_cost


def test_prefilter_negative_epsilon():
    with pytest.raises(ValueError):
        greedy_prefilter(np.zeros((2, 2)), -1)


def test_prefilter_threshold_order():
    C = np.array([[0.4, 5.0, 5.0], [0.2, 0.3, 5.0], [5.0, 5.0, 9.0]])
    fixed, rows, cols = greedy_prefilter(C, 0.5)
    # row 1 (min 0.2) takes column 0; row 0 then has min 5 > 0.5
    assert fixed == [(1, 0)] and rows.tolist() == [0, 2] and cols.tolist() == [1, 2]


@settings(max_examples=100)
@given(arrays(np.int64, st.tuples(st.integers(1, 7), st.integers(1, 3)), elements=st.integers(0, 3)), st.data())
def test_prefilter_zero_fixes_only_equal_rows(M1, data):
    M2 = data.draw(arrays(np.int64, M1.shape, elements=st.integers(0, 3)))
    fixed, _, _ = greedy_prefilter(cost_matrix(M1, M2), 0)
    assert all(np.array_equal(M1[i], M2[j]) for i, j in fixed)


@settings(max_examples=100)
@given(_square(ints=True), st.sampled_from([0, 1, 5, 100]))
def test_greedy_never_beats_hungarian(C, eps):
    g = greedy_hungarian(C, eps)
    assert sorted(g.mapping.tolist()) == list(range(len(C)))
    assert g.total_cost >= hungarian(C).total_cost
    assert all(g.mapping[i] == j for i, j in g.fixed_pairs)


def test_greedy_identical_matrices_zero_cost():
    M = np.array([[1, 2], [1, 2], [0, 3], [2, 2]])
    sol = greedy_hungarian(cost_matrix(M, M), 0)
    assert sol.total_cost == 0
    assert all(np.array_equal(M[i], M[j]) for i, j in enumerate(sol.mapping))


def test_greedy_one_exact_match_residual_optimal():
    rng = np.random.default_rng(7)
    M1 = rng.integers(0, 6, size=(6, 3))
    M2 = M1 + 10
    M2[4] = M1[2]  # the only identical pair
    C = cost_matrix(M1, M2)
    sol = greedy_hungarian(C, 0)
    assert sol.fixed_pairs == ((2, 4),) and sol.mapping[2] == 4
    rows = [0, 1, 3, 4, 5]
    cols = [0, 1, 2, 3, 5]
    assert sol.total_cost == brute_force_min(C[np.ix_(rows, cols)])


def test_greedy_zero_can_cost_more_with_unique_matches():
    # each exact match is unique, yet locking it in is not optimal
    M1 = np.array([[1, 2], [3, 1], [1, 3], [3, 3]])
    M2 = np.array([[1, 2], [3, 2], [3, 2], [2, 1]])
    C = cost_matrix(M1, M2)
    assert hungarian(C).total_cost == 5 == brute_force_min(C)
    assert greedy_hungarian(C, 0).total_cost == 7


def test_greedy_all_exact_matches_equals_hungarian():
    rng = np.random.default_rng(3)
    M1 = rng.integers(0, 50, size=(20, 4))
    M2 = M1[rng.permutation(20)]
    C = cost_matrix(M1, M2)
    assert greedy_hungarian(C, 0).total_cost == hungarian(C).total_cost == 0


def test_solver_scale():
    rng = np.random.default_rng(0)
    C = rng.random((300, 300))
    r, c = linear_sum_assignment(C)
    assert hungarian(C).total_cost == pytest.approx(C[r, c].sum())
