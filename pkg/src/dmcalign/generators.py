"""Synthetic graph models: k-partite Erdos-Renyi, Barabasi-Albert, Chung-Lu.

Generated graphs label node ``i`` as ``str(i)``. The k-partite models split
nodes into ``k`` non-empty groups either as a uniformly random composition
(``partition="random"``, the default) or round-robin (``"round_robin"``,
group sizes differ by at most one).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import poisson

from dmcalign.graph import Graph
from dmcalign.rng import SeedLike, as_rng

__all__ = [
    "GeneratorSpec",
    "partite_groups",
    "gen_er_kpartite",
    "gen_barabasi_albert",
    "poisson_targets",
    "gen_chung_lu_poisson",
    "generate",
]

MODELS = ("er_kpartite", "barabasi_albert", "chung_lu_poisson")
PARTITIONS = ("random", "round_robin")


@dataclass
class GeneratorSpec:
    model: str
    n: int
    k: int = 1
    p_er: float = 0.5
    m_attach: int = 5
    lam: float = 10.0
    partition: str = "random"
    seed: int | None = None

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ValueError(f"source.model: unknown model {self.model!r}, expected one of {MODELS}")
        if self.n < 1:
            raise ValueError(f"source.n: must be >= 1, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"source.k: must satisfy 1 <= k <= n, got k={self.k}, n={self.n}")
        if not 0 <= self.p_er <= 1:
            raise ValueError(f"source.p_er: must lie in [0, 1], got {self.p_er}")
        if self.m_attach < 1:
            raise ValueError(f"source.m_attach: must be >= 1, got {self.m_attach}")
        if self.model == "barabasi_albert" and self.n <= self.m_attach:
            raise ValueError(f"source.n: barabasi_albert needs n > m_attach, got n={self.n}")
        if self.partition not in PARTITIONS:
            raise ValueError(f"source.partition: expected one of {PARTITIONS}, got {self.partition!r}")
        if not self.lam > 0:
            raise ValueError(f"source.lambda: must be > 0, got {self.lam}")

    def as_dict(self) -> dict:
        return asdict(self)


def partite_groups(n: int, k: int, partition: str = "random", seed: SeedLike = None) -> np.ndarray:
    """Group id of each node.

    ``"round_robin"`` puts node ``i`` in group ``i % k``. ``"random"`` cuts a
    shuffled node order at ``k - 1`` distinct uniform positions, so every group
    is non-empty but sizes vary.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if partition == "round_robin":
        return np.arange(n) % k
    if partition != "random":
        raise ValueError(f"unknown partition {partition!r}, expected one of {PARTITIONS}")
    rng = as_rng(seed)
    cuts = np.sort(rng.choice(np.arange(1, n), size=k - 1, replace=False))
    sizes = np.diff(np.concatenate([[0], cuts, [n]]))
    return np.repeat(np.arange(k), sizes)[rng.permutation(n)]


def _upper_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, k=1)


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def gen_er_kpartite(
    n: int, k: int, p_er: float, seed: SeedLike = None, partition: str = "random"
) -> Graph:
    """Each cross-group pair is an edge with probability ``p_er``; no within-group edges."""
    if not 0 <= p_er <= 1:
        raise ValueError(f"p_er must lie in [0, 1], got {p_er}")
    rng = as_rng(seed)
    group = partite_groups(n, k, partition, rng)
    i, j = _upper_pairs(n)
    cross = group[i] != group[j]
    i, j = i[cross], j[cross]
    hit = rng.random(len(i)) < p_er
    return Graph.from_edges(_labels(n), np.column_stack([i[hit], j[hit]]))


def gen_barabasi_albert(n: int, m_attach: int, seed: SeedLike = None) -> Graph:
    """Preferential attachment grown from a clique on ``m_attach + 1`` nodes.

    Each new node picks ``m_attach`` distinct targets; every draw is
    proportional to the current degree, and repeated targets are redrawn.
    """
    if m_attach < 1:
        raise ValueError(f"m_attach must be >= 1, got {m_attach}")
    if n <= m_attach:
        raise ValueError(f"need n > m_attach, got n={n}, m_attach={m_attach}")
    rng = as_rng(seed)
    m0 = m_attach + 1
    src: list[int] = []
    dst: list[int] = []
    for a in range(m0):
        for b in range(a + 1, m0):
            src.append(a)
            dst.append(b)
    # every edge endpoint once per incident edge: uniform draws here are degree-proportional
    stubs = np.empty(2 * (len(src) + m_attach * (n - m0)), dtype=np.int64)
    stubs[: 2 * len(src)] = np.array(src + dst, dtype=np.int64)
    n_stubs = 2 * len(src)
    for v in range(m0, n):
        targets: list[int] = []
        while len(targets) < m_attach:
            t = int(stubs[rng.integers(n_stubs)])
            if t not in targets:
                targets.append(t)
        for t in targets:
            src.append(t)
            dst.append(v)
            stubs[n_stubs] = t
            stubs[n_stubs + 1] = v
            n_stubs += 2
    return Graph.from_edges(_labels(n), np.column_stack([src, dst]))


_REDRAW_ROUNDS = 64


def poisson_targets(n: int, lam: float, seed: SeedLike = None) -> np.ndarray:
    """``n`` Poisson(``lam``) target degrees, zeros redrawn until every target is >= 1."""
    if not lam > 0:
        raise ValueError(f"lambda must be > 0, got {lam}")
    rng = as_rng(seed)
    d = rng.poisson(lam, size=n)
    for _ in range(_REDRAW_ROUNDS):
        zero = d == 0
        if not zero.any():
            return d
        d[zero] = rng.poisson(lam, size=int(zero.sum()))
    # tiny lambda: redrawing would take ~1/lam rounds, so draw the
    # zero-truncated law directly (same distribution)
    zero = d == 0
    u = rng.uniform(np.exp(-lam), 1.0, size=int(zero.sum()))
    d[zero] = np.maximum(1, poisson.ppf(u, lam)).astype(d.dtype)
    return d


def chung_lu_probabilities(targets: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Upper-triangle pairs and their clamped attachment probabilities."""
    targets = np.asarray(targets, dtype=np.float64)
    i, j = _upper_pairs(len(targets))
    prob = np.minimum(1.0, targets[i] * targets[j] / targets.sum())
    return i, j, prob


def gen_chung_lu_poisson(
    n: int, lam: float, k: int = 1, seed: SeedLike = None, partition: str = "random"
) -> Graph:
    """Chung-Lu graph with Poisson target degrees, restricted to cross-group pairs when ``k > 1``."""
    rng = as_rng(seed)
    group = partite_groups(n, k, partition, rng)
    targets = poisson_targets(n, lam, rng)
    i, j, prob = chung_lu_probabilities(targets)
    if k > 1:
        cross = group[i] != group[j]
        i, j, prob = i[cross], j[cross], prob[cross]
    hit = rng.random(len(i)) < prob
    return Graph.from_edges(_labels(n), np.column_stack([i[hit], j[hit]]))


def generate(spec: GeneratorSpec, seed: SeedLike = None) -> Graph:
    """Dispatch on ``spec.model``; ``seed`` overrides ``spec.seed`` when given."""
    spec.validate()
    s = spec.seed if seed is None else seed
    if spec.model == "er_kpartite":
        return gen_er_kpartite(spec.n, spec.k, spec.p_er, s, spec.partition)
    if spec.model == "barabasi_albert":
        return gen_barabasi_albert(spec.n, spec.m_attach, s)
    return gen_chung_lu_poisson(spec.n, spec.lam, spec.k, s, spec.partition)
