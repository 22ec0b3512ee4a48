"""Simple undirected graphs with stable labels, plus edge-list file I/O.

Nodes carry a dense internal index in ``[0, N)`` and an opaque string label.
Algorithms work on indices; scoring works on labels. Adjacency is stored in
CSR form (``indptr``/``indices``/``weights``) with each neighbor list sorted by
index, so a :class:`Graph` is cheap to copy around and safe to share.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from os import PathLike
from typing import Iterable, Iterator, Sequence, TextIO

import numpy as np

from dmcalign.rng import SeedLike, as_rng

logger = logging.getLogger(__name__)

__all__ = [
    "EdgeListError",
    "Graph",
    "DegreeStats",
    "load_edge_list",
    "write_edge_list",
    "degree",
    "degree_stats",
    "relabel_shuffle",
]


class EdgeListError(ValueError):
    """Raised for malformed edge-list input or invalid edge data."""


@dataclass(eq=False, frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Use :meth:`from_edges` rather than the raw constructor; it sanitizes input
    (self-loops dropped, parallel edges collapsed keeping the first weight).
    """

    labels: tuple[str, ...]
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    weighted: bool = False
    self_loops_dropped: int = field(default=0, compare=False)
    duplicates_collapsed: int = field(default=0, compare=False)

    @classmethod
    def from_edges(
        cls,
        labels: Sequence[object],
        edges: Iterable[tuple[int, int]] | np.ndarray,
        weights: Iterable[float] | np.ndarray | None = None,
        weighted: bool = False,
    ) -> "Graph":
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("node labels must be unique")
        n = len(labels)
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        e = e.reshape(-1, 2)
        if weights is None:
            w = np.ones(len(e), dtype=np.float64)
        else:
            w = np.asarray(list(weights) if not isinstance(weights, np.ndarray) else weights, dtype=np.float64)
            if w.shape != (len(e),):
                raise ValueError("weights must have one entry per edge")
        if not weighted:
            w = np.ones(len(e), dtype=np.float64)
        elif len(w) and not (np.all(np.isfinite(w)) and np.all(w > 0)):
            raise EdgeListError("edge weights must be finite and > 0")
        if len(e) and (e.min() < 0 or e.max() >= n):
            raise IndexError("edge endpoint out of range")

        loops = e[:, 0] == e[:, 1]
        n_loops = int(loops.sum())
        e, w = e[~loops], w[~loops]
        a = np.minimum(e[:, 0], e[:, 1])
        b = np.maximum(e[:, 0], e[:, 1])
        _, first = np.unique(a * max(n, 1) + b, return_index=True)
        first.sort()
        n_dups = len(a) - len(first)
        a, b, w = a[first], b[first], w[first]

        rows = np.concatenate([a, b])
        cols = np.concatenate([b, a])
        ww = np.concatenate([w, w])
        order = np.lexsort((cols, rows))
        rows, cols, ww = rows[order], cols[order], ww[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=n), out=indptr[1:])
        return cls(
            labels=labels,
            indptr=indptr,
            indices=cols,
            weights=ww,
            weighted=weighted,
            self_loops_dropped=n_loops,
            duplicates_collapsed=n_dups,
        )

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def degrees(self) -> np.ndarray:
        """Unweighted degree of every node, as an int64 array."""
        return np.diff(self.indptr)

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def neighbor_weights(self, i: int) -> np.ndarray:
        return self.weights[self.indptr[i] : self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nb = self.neighbors(i)
        k = np.searchsorted(nb, j)
        return bool(k < len(nb) and nb[k] == j)

    def edge_array(self) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(pairs, weights)`` with one row ``(i, j)``, ``i < j``, per edge."""
        rows = np.repeat(np.arange(self.n), self.degrees())
        keep = rows < self.indices
        return np.column_stack([rows[keep], self.indices[keep]]), self.weights[keep]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        pairs, w = self.edge_array()
        for (i, j), x in zip(pairs.tolist(), w.tolist()):
            yield i, j, x

    def index_of(self, label: object) -> int:
        try:
            return self._label_index[str(label)]
        except KeyError:
            raise KeyError(f"no node labelled {label!r}") from None

    @property
    def _label_index(self) -> dict[str, int]:
        cache = self.__dict__.get("_label_cache")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_cache", cache)
        return cache

    def induced_subgraph(self, nodes: Sequence[int]) -> "Graph":
        """Subgraph induced on ``nodes``; new index ``k`` is old node ``nodes[k]``."""
        nodes = np.asarray(nodes, dtype=np.int64)
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[nodes] = np.arange(len(nodes))
        pairs, w = self.edge_array()
        if len(pairs):
            a, b = remap[pairs[:, 0]], remap[pairs[:, 1]]
            keep = (a >= 0) & (b >= 0)
            new_edges, w = np.column_stack([a[keep], b[keep]]), w[keep]
        else:
            new_edges = pairs
        return Graph.from_edges(
            [self.labels[i] for i in nodes], new_edges, w, weighted=self.weighted
        )

    def permuted(self, perm: Sequence[int]) -> "Graph":
        """Isomorphic copy in which old node ``i`` moves to index ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(N)")
        labels = [""] * self.n
        for i, p in enumerate(perm.tolist()):
            labels[p] = self.labels[i]
        pairs, w = self.edge_array()
        return Graph.from_edges(labels, perm[pairs] if len(pairs) else pairs, w, weighted=self.weighted)

    def with_weights(self, weights: np.ndarray | Sequence[float]) -> "Graph":
        """Weighted copy; ``weights`` follows the order of :meth:`edge_array`."""
        pairs, _ = self.edge_array()
        return Graph.from_edges(self.labels, pairs, np.asarray(weights, dtype=float), weighted=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.weighted == other.weighted
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.weights, other.weights)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        kind = "weighted " if self.weighted else ""
        return f"<{kind}Graph N={self.n} E={self.edge_count}>"


@dataclass(frozen=True)
class DegreeStats:
    mean: float
    variance: float
    max_degree: int
    n: int


def degree(g: Graph, i: int) -> int:
    """Number of neighbors of node ``i`` (edge weights are ignored)."""
    if not 0 <= i < g.n:
        raise IndexError(f"node index {i} out of range for N={g.n}")
    return int(g.indptr[i + 1] - g.indptr[i])


def degree_stats(g: Graph) -> DegreeStats:
    """Population mean and variance of the degree sequence."""
    if g.n < 1:
        raise ValueError("degree_stats needs at least one node")
    d = g.degrees().astype(np.float64)
    return DegreeStats(float(d.mean()), float(d.var()), int(d.max()), g.n)


def relabel_shuffle(g: Graph, seed: SeedLike = None) -> tuple[Graph, np.ndarray]:
    """Shuffle internal index order uniformly at random.

    Returns the shuffled graph and ``perm`` with ``perm[old] = new``. Labels move
    with their nodes, so ``shuffled.labels[perm[i]] == g.labels[i]``.
    """
    perm = as_rng(seed).permutation(g.n)
    return g.permuted(perm), perm


_SPLIT_AUTO = re.compile(r"[,\s]+")


def _split(line: str, delimiter: str | None) -> list[str]:
    if delimiter is None:
        return [t for t in _SPLIT_AUTO.split(line.strip()) if t]
    return [t.strip() for t in line.strip().split(delimiter) if t.strip()]


def load_edge_list(
    path: str | PathLike,
    weighted: bool = False,
    delimiter: str | None = None,
) -> Graph:
    """Read an edge-list file.

    Each non-blank, non-``#`` line is ``u v`` or ``u v w`` separated by
    whitespace or commas (or by ``delimiter`` when given). A single-token line
    declares a node without edges. Node order is first appearance. Self-loops
    are dropped and repeated edges keep their first weight; both are counted on
    the returned graph. Without ``weighted`` any weight column is ignored.
    """
    labels: dict[str, int] = {}
    us: list[int] = []
    vs: list[int] = []
    ws: list[float] = []

    def idx(tok: str) -> int:
        k = labels.get(tok)
        if k is None:
            k = labels[tok] = len(labels)
        return k

    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#") or line.startswith("%"):
                continue
            toks = _split(line, delimiter)
            if len(toks) == 1:
                idx(toks[0])
                continue
            if len(toks) > 3:
                raise EdgeListError(f"{path}:{lineno}: expected 'u v' or 'u v w', got {line!r}")
            w = 1.0
            if len(toks) == 3 and weighted:
                try:
                    w = float(toks[2])
                except ValueError:
                    raise EdgeListError(f"{path}:{lineno}: bad weight {toks[2]!r}") from None
                if not (w > 0 and np.isfinite(w)):
                    raise EdgeListError(f"{path}:{lineno}: weight must be > 0, got {w}")
            us.append(idx(toks[0]))
            vs.append(idx(toks[1]))
            ws.append(w)

    g = Graph.from_edges(
        list(labels), np.column_stack([us, vs]) if us else np.empty((0, 2), np.int64), ws, weighted=weighted
    )
    if g.self_loops_dropped or g.duplicates_collapsed:
        logger.warning(
            "%s: dropped %d self-loops, collapsed %d duplicate edges",
            path, g.self_loops_dropped, g.duplicates_collapsed,
        )
    return g


def write_edge_list(g: Graph, path: str | PathLike | TextIO) -> None:
    """Write ``g`` so that :func:`load_edge_list` restores it exactly, node order included.

    Node ``i`` is written with its edges to lower-indexed neighbors; a node with
    no such neighbor gets a single-token declaration line first. ``path`` may
    also be an open text stream.
    """
    if hasattr(path, "write"):
        _write_edges(g, path)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            _write_edges(g, fh)


def _write_edges(g: Graph, fh: TextIO) -> None:
    for i in range(g.n):
        nb = g.neighbors(i)
        wt = g.neighbor_weights(i)
        lower = nb < i
        if not lower.any():
            fh.write(f"{g.labels[i]}\n")
        for j, w in zip(nb[lower].tolist(), wt[lower].tolist()):
            if g.weighted:
                fh.write(f"{g.labels[j]} {g.labels[i]} {w!r}\n")
            else:
                fh.write(f"{g.labels[j]} {g.labels[i]}\n")
