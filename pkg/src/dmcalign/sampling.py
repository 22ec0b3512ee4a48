"""Build aligned graph pairs with known ground truth.

Two protocols are provided. :func:`overlap_pair` carves two equal-size
induced subgraphs out of one sampled graph so that they share a random-walk
grown node set; :func:`edge_deletion_pair` keeps the node set and drops each
edge of the second copy independently. Both shuffle output index order so that
positions carry no information about the answer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from dmcalign.graph import Graph, load_edge_list, relabel_shuffle, write_edge_list
from dmcalign.rng import SeedLike, as_rng

__all__ = [
    "GraphPair",
    "random_walk_nodes",
    "random_walk_sample",
    "overlap_pair",
    "edge_deletion_pair",
    "save_pair",
    "load_pair",
]


@dataclass(frozen=True)
class GraphPair:
    g1: Graph
    g2: Graph
    common_labels: frozenset[str]
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.g1.n != self.g2.n:
            raise ValueError(f"pair graphs differ in order: {self.g1.n} vs {self.g2.n}")
        if not self.common_labels <= set(self.g1.labels) & set(self.g2.labels):
            raise ValueError("common labels must appear in both graphs")


def _components(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    adj = csr_matrix((np.ones(len(g.indices)), g.indices, g.indptr), shape=(g.n, g.n))
    _, comp = connected_components(adj, directed=False)
    return comp, np.bincount(comp)


def random_walk_nodes(g: Graph, n: int, seed: SeedLike = None) -> np.ndarray:
    """Indices of the first ``n`` distinct nodes hit by a restarting random walk.

    The walk starts at a uniform random node and steps to a uniform random
    neighbor. Once every node of the current connected component has been
    visited it restarts at a uniform random unvisited node. Component
    bookkeeping makes the exhaustion test exact, so the walk never wanders
    inside a finished component.
    """
    if not 0 <= n <= g.n:
        raise ValueError(f"cannot sample n={n} nodes from a graph with {g.n}")
    rng = as_rng(seed)
    order: list[int] = []
    if n == 0:
        return np.array(order, dtype=np.int64)
    comp, comp_size = _components(g)
    seen_in_comp = np.zeros_like(comp_size)
    visited = np.zeros(g.n, dtype=bool)
    indptr, indices = g.indptr, g.indices

    cur = int(rng.integers(g.n))
    while True:
        if not visited[cur]:
            visited[cur] = True
            order.append(cur)
            seen_in_comp[comp[cur]] += 1
            if len(order) == n:
                break
        if seen_in_comp[comp[cur]] == comp_size[comp[cur]]:
            fresh = np.flatnonzero(~visited)
            cur = int(fresh[rng.integers(len(fresh))])
        else:
            lo, hi = indptr[cur], indptr[cur + 1]
            cur = int(indices[lo + rng.integers(hi - lo)])
    return np.array(order, dtype=np.int64)


def random_walk_sample(g: Graph, n: int, seed: SeedLike = None) -> Graph:
    """Induced subgraph on ``n`` random-walk-visited nodes, in visit order."""
    if n > g.n:
        raise ValueError(f"sample size n={n} exceeds graph order {g.n}")
    return g.induced_subgraph(random_walk_nodes(g, n, seed))


def _seed_param(seed: SeedLike):
    return seed if isinstance(seed, (int, np.integer)) else None


def overlap_pair(g_s: Graph, p: float, seed: SeedLike = None) -> GraphPair:
    """Two induced subgraphs of ``g_s`` sharing a random-walk node set.

    The common set has ``round(n * p)`` nodes, shrunk by one when needed so the
    remaining nodes split evenly into the two private halves.
    """
    if not 0 < p <= 1:
        raise ValueError(f"overlap p must lie in (0, 1], got {p}")
    rng = as_rng(seed)
    n = g_s.n
    c = int(np.floor(n * p + 0.5))
    if (n - c) % 2:
        c -= 1
    if c < 1:
        raise ValueError(f"overlap p={p} on n={n} leaves an empty common set")

    common = random_walk_nodes(g_s, c, rng)
    mask = np.ones(n, dtype=bool)
    mask[common] = False
    rest = rng.permutation(np.flatnonzero(mask))
    h1, h2 = rest[: len(rest) // 2], rest[len(rest) // 2 :]

    g1, _ = relabel_shuffle(g_s.induced_subgraph(np.concatenate([common, h1])), rng)
    g2, _ = relabel_shuffle(g_s.induced_subgraph(np.concatenate([common, h2])), rng)
    return GraphPair(
        g1,
        g2,
        frozenset(g_s.labels[i] for i in common.tolist()),
        {"sampler": "random_walk", "n": n, "p": p, "seed": _seed_param(seed)},
    )


def edge_deletion_pair(g_s: Graph, p_d: float, seed: SeedLike = None) -> GraphPair:
    """``g1 = g_s``; ``g2`` keeps each edge with probability ``1 - p_d``, indices shuffled."""
    if not 0 <= p_d < 1:
        raise ValueError(f"deletion probability p_d must lie in [0, 1), got {p_d}")
    rng = as_rng(seed)
    pairs, w = g_s.edge_array()
    keep = rng.random(len(pairs)) >= p_d
    g2 = Graph.from_edges(g_s.labels, pairs[keep], w[keep], weighted=g_s.weighted)
    g2, _ = relabel_shuffle(g2, rng)
    return GraphPair(
        g_s,
        g2,
        frozenset(g_s.labels),
        {"sampler": "edge_deletion", "n": g_s.n, "p_d": p_d, "seed": _seed_param(seed)},
    )


def save_pair(pair: GraphPair, directory: str | PathLike) -> Path:
    """Write ``g1.edges``, ``g2.edges``, ``common.txt`` and ``params.json``."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    write_edge_list(pair.g1, d / "g1.edges")
    write_edge_list(pair.g2, d / "g2.edges")
    (d / "common.txt").write_text("".join(f"{lab}\n" for lab in sorted(pair.common_labels)))
    params = dict(pair.params, weighted=pair.g1.weighted)
    (d / "params.json").write_text(json.dumps(params, indent=2, sort_keys=True) + "\n")
    return d


def load_pair(directory: str | PathLike, weighted: bool | None = None) -> GraphPair:
    d = Path(directory)
    params_file = d / "params.json"
    params = json.loads(params_file.read_text()) if params_file.exists() else {}
    if weighted is None:
        weighted = bool(params.get("weighted", False))
    g1 = load_edge_list(d / "g1.edges", weighted=weighted)
    g2 = load_edge_list(d / "g2.edges", weighted=weighted)
    common_file = d / "common.txt"
    if common_file.exists():
        common = frozenset(x.strip() for x in common_file.read_text().splitlines() if x.strip())
    else:
        common = frozenset(g1.labels) & frozenset(g2.labels)
    return GraphPair(g1, g2, common, params)
