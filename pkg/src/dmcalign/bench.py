"""Experiment harness: config-driven trials, parameter sweeps, dataset stats.

A config is a flat ``key = value`` text file (``#`` starts a comment) using
dotted keys, e.g.::

    source.model = barabasi_albert
    source.n = 300
    sampler.kind = edge_deletion
    sampler.p_d = 0.01
    methods = dmc, greedy_dmc:10
    trials = 5
    seed = 0

Trial ``t`` uses seed ``seed + t`` for one RNG stream that drives, in order,
graph generation (if any), the optional random-walk downsample, and the pair
sampler. Rows carry that seed, so any single trial can be rerun alone with
``trials = 1`` and ``seed = <row seed>``.
"""

from __future__ import annotations

import csv
import io
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from os import PathLike
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.stats import spearmanr

from dmcalign.generators import GeneratorSpec, generate
from dmcalign.graph import Graph, degree_stats, load_edge_list
from dmcalign.pipeline import MethodSpec, align
from dmcalign.sampling import GraphPair, edge_deletion_pair, overlap_pair, random_walk_sample

__all__ = [
    "CSV_HEADER",
    "ConfigError",
    "SamplerSpec",
    "ExperimentConfig",
    "load_config",
    "run_experiment",
    "summarize",
    "sweep",
    "SWEEP_AXES",
    "average_clustering",
    "stats_report",
]

CSV_HEADER = ("trial", "seed", "method", "epsilon", "n", "common", "score", "total_cost", "wall_ms")
SUMMARY_HEADER = ("method", "epsilon", "trials", "mean_score", "stdev_score", "mean_total_cost")


class ConfigError(ValueError):
    """Invalid experiment configuration; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class SamplerSpec:
    kind: str = "edge_deletion"
    n: int | None = None
    p: float = 0.9
    p_d: float = 0.01

    def validate(self) -> None:
        if self.kind not in ("random_walk", "edge_deletion"):
            raise ConfigError("sampler.kind", f"expected random_walk or edge_deletion, got {self.kind!r}")
        if self.n is not None and self.n < 1:
            raise ConfigError("sampler.n", f"must be >= 1, got {self.n}")
        if self.kind == "random_walk" and not 0 < self.p <= 1:
            raise ConfigError("sampler.p", f"must lie in (0, 1], got {self.p}")
        if self.kind == "edge_deletion" and not 0 <= self.p_d < 1:
            raise ConfigError("sampler.p_d", f"must lie in [0, 1), got {self.p_d}")


@dataclass(frozen=True)
class ExperimentConfig:
    source_path: str | None = None
    generator: GeneratorSpec | None = None
    weighted: bool = False
    sampler: SamplerSpec = field(default_factory=SamplerSpec)
    methods: tuple[MethodSpec, ...] = (MethodSpec("dmc"),)
    trials: int = 1
    seed: int = 0
    output: str | None = None
    workers: int = 1
    timing: bool = False

    def validate(self) -> None:
        if (self.source_path is None) == (self.generator is None):
            raise ConfigError("source", "give exactly one of source.path or source.model")
        if self.generator is not None:
            try:
                self.generator.validate()
            except ValueError as exc:
                name, _, msg = str(exc).partition(": ")
                raise ConfigError(name, msg) from None
        self.sampler.validate()
        if self.trials < 1:
            raise ConfigError("trials", f"must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError("workers", f"must be >= 1, got {self.workers}")
        if not self.methods:
            raise ConfigError("methods", "at least one method is required")
        if any(m.method == "weighted_dmc" for m in self.methods) and not (
            self.weighted and self.source_path is not None
        ):
            raise ConfigError("methods", "weighted_dmc needs a weighted file source (source.weighted = true)")

    @classmethod
    def from_mapping(cls, kv: dict[str, str]) -> "ExperimentConfig":
        """Build a config from dotted string keys; unknown keys are rejected."""
        kv = dict(kv)

        def take(key, conv, default=None):
            if key not in kv:
                return default
            raw = kv.pop(key)
            try:
                return conv(raw)
            except ValueError:
                raise ConfigError(key, f"cannot parse {raw!r}") from None

        gen = None
        model = take("source.model", str)
        path = take("source.path", str)
        gdefaults = GeneratorSpec(model="barabasi_albert", n=1)
        gen_fields = dict(
            n=take("source.n", int),
            k=take("source.k", int, gdefaults.k),
            p_er=take("source.p_er", float, gdefaults.p_er),
            m_attach=take("source.m_attach", int, gdefaults.m_attach),
            lam=take("source.lambda", float, gdefaults.lam),
            partition=take("source.partition", str, gdefaults.partition),
        )
        if model is not None:
            if gen_fields["n"] is None:
                raise ConfigError("source.n", "required when source.model is set")
            gen = GeneratorSpec(model=model, **gen_fields)
        sampler = SamplerSpec(
            kind=take("sampler.kind", str, "edge_deletion"),
            n=take("sampler.n", int),
            p=take("sampler.p", float, 0.9),
            p_d=take("sampler.p_d", float, 0.01),
        )
        methods_raw = take("methods", str, "dmc")
        try:
            methods = tuple(MethodSpec.parse(x) for x in methods_raw.split(",") if x.strip())
        except ValueError as exc:
            raise ConfigError("methods", str(exc)) from None
        cfg = cls(
            source_path=path,
            generator=gen,
            weighted=take("source.weighted", _parse_bool, False),
            sampler=sampler,
            methods=methods,
            trials=take("trials", int, 1),
            seed=take("seed", int, 0),
            output=take("output", str),
            workers=take("workers", int, 1),
            timing=take("timing", _parse_bool, False),
        )
        if kv:
            raise ConfigError(sorted(kv)[0], "unknown config key")
        cfg.validate()
        return cfg


def _parse_bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(text)


def parse_config_text(text: str) -> dict[str, str]:
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ConfigError(f"line {lineno}", f"expected 'key = value', got {raw.strip()!r}")
        kv[key.strip()] = value.strip()
    return kv


def load_config(path: str | PathLike | None, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    kv = parse_config_text(Path(path).read_text()) if path else {}
    kv.update(overrides or {})
    return ExperimentConfig.from_mapping(kv)


def _load_source(cfg: ExperimentConfig) -> Graph | None:
    if cfg.source_path is None:
        return None
    return load_edge_list(cfg.source_path, weighted=cfg.weighted)


def make_pair(cfg: ExperimentConfig, trial: int, base: Graph | None = None) -> GraphPair:
    """Build the pair of trial ``trial`` exactly as :func:`run_experiment` does."""
    rng = np.random.default_rng(cfg.seed + trial)
    g = base if base is not None else _load_source(cfg)
    if g is None:
        g = generate(cfg.generator, rng)
    if cfg.sampler.n is not None:
        g = random_walk_sample(g, cfg.sampler.n, rng)
    if cfg.sampler.kind == "random_walk":
        return overlap_pair(g, cfg.sampler.p, rng)
    return edge_deletion_pair(g, cfg.sampler.p_d, rng)


def _fmt(x: float) -> str:
    return repr(float(x))


def _run_trial(args) -> list[dict]:
    cfg, trial, base = args
    pair = make_pair(cfg, trial, base)
    rows = []
    for spec in cfg.methods:
        res = align(pair, spec)
        rows.append(
            {
                "trial": trial,
                "seed": cfg.seed + trial,
                "method": spec.method,
                "epsilon": "" if spec.epsilon is None else _fmt(spec.epsilon),
                "n": pair.g1.n,
                "common": len(pair.common_labels),
                "score": res.score,
                "total_cost": res.total_cost,
                "wall_ms": f"{res.wall_ms:.3f}" if cfg.timing else "",
            }
        )
    return rows


def _csv_text(rows: Sequence[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(r[h]) if isinstance(r[h], float) else r[h] for h in header])
    return buf.getvalue()


def summarize(rows: Sequence[dict], keys: Sequence[str] = ()) -> list[dict]:
    """Mean and sample stdev of score per (``keys``..., method, epsilon), in first-seen order."""
    groups: dict[tuple, list[dict]] = {}
    for r in rows:
        groups.setdefault(tuple(r[k] for k in keys) + (r["method"], r["epsilon"]), []).append(r)
    out = []
    for key, rs in groups.items():
        scores = [r["score"] for r in rs]
        rec = dict(zip(keys, key))
        rec.update(
            method=key[-2],
            epsilon=key[-1],
            trials=len(rs),
            mean_score=statistics.fmean(scores),
            stdev_score=statistics.stdev(scores) if len(scores) > 1 else 0.0,
            mean_total_cost=statistics.fmean(r["total_cost"] for r in rs),
        )
        out.append(rec)
    return out


def _print_summary(summary: Sequence[dict], keys: Sequence[str], stream) -> None:
    for rec in summary:
        prefix = " ".join(f"{k}={rec[k]}" for k in keys)
        label = rec["method"] + (f":{rec['epsilon']}" if rec["epsilon"] else "")
        stream.write(
            f"{prefix + ' ' if prefix else ''}{label:<18} trials={rec['trials']:<3d} "
            f"mean={rec['mean_score']:.4f} stdev={rec['stdev_score']:.4f} "
            f"cost={rec['mean_total_cost']:.6g}\n"
        )


def _collect(cfg: ExperimentConfig) -> list[dict]:
    base = _load_source(cfg)
    jobs = [(cfg, t, base) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_trial, jobs))
    else:
        chunks = [_run_trial(j) for j in jobs]
    return [r for chunk in chunks for r in chunk]


def run_experiment(cfg: ExperimentConfig, quiet: bool = False, stream=None) -> list[dict]:
    """Run every trial of ``cfg``; write ``results.csv`` and ``summary.csv`` under ``cfg.output``.

    Rows come back (and are written) in trial order whatever the worker count.
    """
    cfg.validate()
    rows = _collect(cfg)
    summary = summarize(rows)
    if cfg.output:
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "results.csv").write_text(_csv_text(rows, CSV_HEADER))
        (out / "summary.csv").write_text(_csv_text(summary, SUMMARY_HEADER))
    if not quiet:
        _print_summary(summary, (), stream or sys.stdout)
    return rows


def _with_epsilon(cfg: ExperimentConfig, eps: float) -> ExperimentConfig:
    if not any(m.method == "greedy_dmc" for m in cfg.methods):
        raise ConfigError("methods", "an epsilon sweep needs at least one greedy_dmc method")
    methods = tuple(MethodSpec("greedy_dmc", eps) if m.method == "greedy_dmc" else m for m in cfg.methods)
    return replace(cfg, methods=methods)


def _with_generator(field_name: str, conv: Callable) -> Callable:
    def apply(cfg: ExperimentConfig, value) -> ExperimentConfig:
        if cfg.generator is None:
            key = "source.lambda" if field_name == "lam" else f"source.{field_name}"
            raise ConfigError(key, "sweep axis needs a generator source")
        return replace(cfg, generator=replace(cfg.generator, **{field_name: conv(value)}))

    return apply


SWEEP_AXES: dict[str, Callable] = {
    "p_d": lambda cfg, v: replace(cfg, sampler=replace(cfg.sampler, kind="edge_deletion", p_d=float(v))),
    "p": lambda cfg, v: replace(cfg, sampler=replace(cfg.sampler, kind="random_walk", p=float(v))),
    "k": _with_generator("k", int),
    "lambda": _with_generator("lam", float),
    "epsilon": lambda cfg, v: _with_epsilon(cfg, float(v)),
}


def sweep(
    cfg: ExperimentConfig,
    axis: str,
    values: Sequence,
    quiet: bool = False,
    stream=None,
) -> tuple[list[dict], list[dict]]:
    """Run :func:`run_experiment` once per axis value.

    Writes ``sweep.csv`` (rows prefixed by ``axis,value``) and
    ``sweep_summary.csv`` under ``cfg.output``. Returns ``(rows, summary)``.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError("axis", f"unknown sweep axis {axis!r}, expected one of {sorted(SWEEP_AXES)}")
    rows: list[dict] = []
    for v in values:
        sub = SWEEP_AXES[axis](cfg, v)
        sub = replace(sub, output=None)
        sub.validate()
        for r in _collect(sub):
            rows.append({"axis": axis, "value": v, **r})
    summary = summarize(rows, ("axis", "value"))
    if cfg.output:
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        (out / "sweep.csv").write_text(_csv_text(rows, ("axis", "value") + CSV_HEADER))
        (out / "sweep_summary.csv").write_text(_csv_text(summary, ("axis", "value") + SUMMARY_HEADER))
    if not quiet:
        s = stream or sys.stdout
        _print_summary(summary, ("value",), s)
        for method, rho in trend(summary).items():
            s.write(f"spearman({axis}, mean score) {method}: {rho:+.3f}\n")
    return rows, summary


def trend(summary: Sequence[dict]) -> dict[str, float]:
    """Spearman correlation between sweep value and mean score, per method."""
    by_method: dict[str, list[tuple[float, float]]] = {}
    for rec in summary:
        label = rec["method"] + (f":{rec['epsilon']}" if rec["epsilon"] and rec["axis"] != "epsilon" else "")
        by_method.setdefault(label, []).append((float(rec["value"]), rec["mean_score"]))
    out = {}
    for label, pts in by_method.items():
        if len(pts) < 2:
            continue
        x, y = zip(*pts)
        if len(set(x)) < 2 or len(set(y)) < 2:
            out[label] = 0.0  # rank correlation undefined for a flat series
            continue
        out[label] = float(spearmanr(x, y)[0])
    return out


def average_clustering(g: Graph) -> float:
    """Mean local clustering coefficient; nodes of degree < 2 count as 0."""
    if g.n == 0:
        return 0.0
    A = csr_matrix((np.ones(len(g.indices)), g.indices, g.indptr), shape=(g.n, g.n))
    tri2 = np.asarray((A @ A).multiply(A).sum(axis=1)).ravel()  # 2 * triangles through each node
    d = g.degrees().astype(np.float64)
    denom = d * (d - 1)
    local = np.divide(tri2, denom, out=np.zeros(g.n), where=denom > 0)
    return float(local.mean())


def stats_report(path: str | PathLike, weighted: bool = False, delimiter: str | None = None) -> dict:
    g = load_edge_list(path, weighted=weighted, delimiter=delimiter)
    ds = degree_stats(g)
    n, e = g.n, g.edge_count
    return {
        "n": n,
        "edges": e,
        "mean_degree": ds.mean,
        "degree_variance": ds.variance,
        "max_degree": ds.max_degree,
        "density": 2 * e / (n * (n - 1)) if n > 1 else 0.0,
        "clustering": average_clustering(g),
        "self_loops_dropped": g.self_loops_dropped,
        "duplicates_collapsed": g.duplicates_collapsed,
    }
