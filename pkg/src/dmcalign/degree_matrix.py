"""Degree matrices: one row per node listing its neighbors' degrees.

Row ``i`` holds the degrees of node ``i``'s neighbors in ascending order,
zero-padded on the right to the shared width ``m`` (the larger of the two
graphs' maximum degrees). The weighted variant multiplies each neighbor's
degree by the weight of the connecting edge before sorting.
"""

from __future__ import annotations

from dataclasses import dataclass
from os import PathLike

import numpy as np

from dmcalign.graph import Graph

__all__ = [
    "DegreeMatrix",
    "degree_matrix",
    "build_degree_matrices",
    "build_weighted_degree_matrices",
    "permute_rows",
]


@dataclass(frozen=True, eq=False)
class DegreeMatrix:
    rows: np.ndarray
    node_of_row: np.ndarray

    @property
    def m(self) -> int:
        return self.rows.shape[1]

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DegreeMatrix):
            return NotImplemented
        return np.array_equal(self.rows, other.rows) and np.array_equal(self.node_of_row, other.node_of_row)

    __hash__ = None  # type: ignore[assignment]

    def to_csv(self, path: str | PathLike) -> None:
        fmt = "%d" if np.issubdtype(self.rows.dtype, np.integer) else "%.17g"
        np.savetxt(path, self.rows, fmt=fmt, delimiter=",")


def degree_matrix(g: Graph, m: int | None = None, weighted: bool = False) -> DegreeMatrix:
    """Degree matrix of a single graph with ``m`` columns (default: its max degree)."""
    deg = g.degrees()
    width = int(deg.max(initial=0))
    if m is None:
        m = width
    elif m < width:
        raise ValueError(f"m={m} is narrower than the max degree {width}")
    vals = deg[g.indices]
    if weighted:
        vals = vals * g.weights
        out = np.zeros((g.n, m), dtype=np.float64)
    else:
        out = np.zeros((g.n, m), dtype=np.int64)
    row = np.repeat(np.arange(g.n), deg)
    order = np.lexsort((vals, row))
    col = np.arange(len(row)) - np.repeat(g.indptr[:-1], deg)
    out[row, col] = vals[order]
    return DegreeMatrix(out, np.arange(g.n))


def _check_pair(g1: Graph, g2: Graph) -> int:
    if g1.n != g2.n:
        raise ValueError(f"graphs must have equal order, got {g1.n} and {g2.n}")
    return int(max(g1.degrees().max(initial=0), g2.degrees().max(initial=0)))


def build_degree_matrices(g1: Graph, g2: Graph) -> tuple[DegreeMatrix, DegreeMatrix]:
    m = _check_pair(g1, g2)
    return degree_matrix(g1, m), degree_matrix(g2, m)


def build_weighted_degree_matrices(g1: Graph, g2: Graph) -> tuple[DegreeMatrix, DegreeMatrix]:
    """Entries are ``deg(u) * w(v, u)``; the width is still set by the plain max degree."""
    if not (g1.weighted and g2.weighted):
        raise ValueError("weighted degree matrices need two weighted graphs")
    m = _check_pair(g1, g2)
    return degree_matrix(g1, m, weighted=True), degree_matrix(g2, m, weighted=True)


def permute_rows(M: DegreeMatrix, perm) -> DegreeMatrix:
    """Move row ``i`` to position ``perm[i]``; ``node_of_row`` travels along."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (M.n,) or not np.array_equal(np.sort(perm), np.arange(M.n)):
        raise ValueError("perm must be a permutation of the row indices")
    rows = np.empty_like(M.rows)
    nodes = np.empty_like(M.node_of_row)
    rows[perm] = M.rows
    nodes[perm] = M.node_of_row
    return DegreeMatrix(rows, nodes)
