"""Row-to-row assignment between degree matrices.

The exact solver is the O(N^3) shortest-augmenting-path form of the Hungarian
method with dual potentials. It adds one row at a time and always extends the
search tree through the lowest-indexed column among equally cheap candidates,
which makes the result deterministic under ties. The greedy prefilter fixes
cheap row/column pairs first (exact matches only when ``epsilon == 0``) and
leaves the rest to the exact solver.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from dmcalign.degree_matrix import DegreeMatrix

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure-Python fallback, same results, much slower
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

__all__ = [
    "Assignment",
    "cost_matrix",
    "hungarian",
    "greedy_prefilter",
    "greedy_hungarian",
]


@dataclass(frozen=True, eq=False)
class Assignment:
    """``mapping[i]`` is the column (row of ``M2``) assigned to row ``i`` of ``M1``."""

    mapping: np.ndarray
    total_cost: float
    fixed_pairs: tuple[tuple[int, int], ...] = ()


def cost_matrix(M1: DegreeMatrix | np.ndarray, M2: DegreeMatrix | np.ndarray) -> np.ndarray:
    """Squared Euclidean distance between every row of ``M1`` and every row of ``M2``."""
    a = M1.rows if isinstance(M1, DegreeMatrix) else np.asarray(M1)
    b = M2.rows if isinstance(M2, DegreeMatrix) else np.asarray(M2)
    if a.ndim != 2 or a.shape != b.shape:
        raise ValueError(f"degree matrices must share a shape, got {a.shape} and {b.shape}")
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[0]))
    return cdist(a.astype(np.float64), b.astype(np.float64), "sqeuclidean")


@njit(cache=True)
def _lsa(cost):
    n = cost.shape[0]
    inf = np.inf
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    # p[j]: 1-based row matched to column j (0 = free); column 0 is the virtual root
    p = np.zeros(n + 1, dtype=np.int64)
    way = np.zeros(n + 1, dtype=np.int64)
    minv = np.empty(n + 1)
    used = np.empty(n + 1, dtype=np.bool_)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv[:] = inf
        used[:] = False
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = -1
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    mapping = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        mapping[p[j] - 1] = j - 1
    return mapping


def _as_square(C) -> np.ndarray:
    C = np.ascontiguousarray(C, dtype=np.float64)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {C.shape}")
    if not np.all(np.isfinite(C)):
        raise ValueError("cost matrix has non-finite entries")
    return C


def hungarian(C) -> Assignment:
    """Minimum-cost perfect matching of a square cost matrix."""
    C = _as_square(C)
    if C.shape[0] == 0:
        return Assignment(np.empty(0, dtype=np.int64), 0.0)
    mapping = _lsa(C)
    return Assignment(mapping, float(C[np.arange(len(C)), mapping].sum()))


def greedy_prefilter(C, epsilon: float) -> tuple[list[tuple[int, int]], np.ndarray, np.ndarray]:
    """Greedily fix row/column pairs whose cost is at most ``epsilon``.

    Rows are taken in ascending order of their cheapest still-free column
    (ties: lower row, then lower column). A row whose cheapest free column
    costs more than ``epsilon`` is left for the exact solver; since removing
    columns can only raise a row's minimum, such a row never qualifies later.

    Returns ``(fixed_pairs, free_rows, free_cols)``.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    C = _as_square(C)
    n = len(C)
    taken = np.zeros(n)  # 0 for free columns, inf once matched
    row_free = np.ones(n, dtype=bool)
    col_free = np.ones(n, dtype=bool)
    fixed: list[tuple[int, int]] = []
    if n == 0:
        return fixed, np.empty(0, np.int64), np.empty(0, np.int64)

    best = np.argmin(C, axis=1)
    heap = [(float(C[i, best[i]]), i, int(best[i])) for i in range(n) if C[i, best[i]] <= epsilon]
    heapq.heapify(heap)
    while heap:
        _, i, j = heapq.heappop(heap)
        if col_free[j]:
            fixed.append((i, j))
            row_free[i] = col_free[j] = False
            taken[j] = np.inf
            continue
        row = C[i] + taken
        j = int(np.argmin(row))
        if row[j] <= epsilon:
            heapq.heappush(heap, (float(row[j]), i, j))
    return fixed, np.flatnonzero(row_free), np.flatnonzero(col_free)


def greedy_hungarian(C, epsilon: float) -> Assignment:
    """Greedy prefilter, then the exact solver on whatever is left."""
    C = _as_square(C)
    fixed, rows, cols = greedy_prefilter(C, epsilon)
    mapping = np.empty(len(C), dtype=np.int64)
    for i, j in fixed:
        mapping[i] = j
    if len(rows):
        sub = hungarian(C[np.ix_(rows, cols)])
        mapping[rows] = cols[sub.mapping]
    total = float(C[np.arange(len(C)), mapping].sum()) if len(C) else 0.0
    return Assignment(mapping, total, tuple(sorted(fixed)))
