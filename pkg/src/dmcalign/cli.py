"""Command-line entry point: ``dmc-align {align,experiment,sweep,stats,gen,sample}``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from dmcalign.bench import CSV_HEADER, ConfigError, load_config, run_experiment, stats_report, sweep
from dmcalign.degree_matrix import build_degree_matrices, build_weighted_degree_matrices
from dmcalign.generators import MODELS, PARTITIONS, GeneratorSpec, generate
from dmcalign.graph import EdgeListError, load_edge_list, write_edge_list
from dmcalign.pipeline import METHODS, MethodSpec, align
from dmcalign.sampling import GraphPair, edge_deletion_pair, load_pair, overlap_pair, random_walk_sample, save_pair


def _method_spec(args) -> MethodSpec:
    if args.method == "greedy_dmc":
        return MethodSpec("greedy_dmc", args.epsilon if args.epsilon is not None else 0.0)
    if args.epsilon is not None:
        raise ConfigError("epsilon", "--epsilon only applies to --method greedy_dmc")
    return MethodSpec(args.method)


def cmd_align(args) -> int:
    if len(args.inputs) == 1:
        pair = load_pair(args.inputs[0], weighted=args.weighted or None)
    elif len(args.inputs) == 2:
        g1 = load_edge_list(args.inputs[0], weighted=args.weighted)
        g2 = load_edge_list(args.inputs[1], weighted=args.weighted)
        if args.common:
            common = frozenset(x.strip() for x in Path(args.common).read_text().splitlines() if x.strip())
        else:
            common = frozenset(g1.labels) & frozenset(g2.labels)
        pair = GraphPair(g1, g2, common)
    else:
        raise ConfigError("inputs", "give a pair directory or two edge-list files")
    spec = _method_spec(args)
    res = align(pair, spec)

    if args.dump_matrices:
        d = Path(args.dump_matrices)
        d.mkdir(parents=True, exist_ok=True)
        build = build_weighted_degree_matrices if spec.method == "weighted_dmc" else build_degree_matrices
        M1, M2 = build(pair.g1, pair.g2)
        M1.to_csv(d / "m1.csv")
        M2.to_csv(d / "m2.csv")
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        with open(d / "mapping.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["g1_label", "g2_label"])
            for a in pair.g1.labels:
                w.writerow([a, res.label_map[a]])
        with open(d / "result.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            w.writerow([
                0, pair.params.get("seed", ""), spec.method,
                "" if spec.epsilon is None else repr(float(spec.epsilon)),
                pair.g1.n, len(pair.common_labels), repr(res.score), repr(res.total_cost),
                f"{res.wall_ms:.3f}",
            ])
    if not args.quiet:
        print(
            f"{spec} N={pair.g1.n} common={len(pair.common_labels)} "
            f"score={res.score:.4f} total_cost={res.total_cost:.6g} wall_ms={res.wall_ms:.1f}"
        )
    return 0


def _overrides(args) -> dict[str, str]:
    kv = {}
    for item in args.set or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ConfigError("--set", f"expected key=value, got {item!r}")
        kv[key.strip()] = value.strip()
    if args.seed is not None:
        kv["seed"] = str(args.seed)
    if args.trials is not None:
        kv["trials"] = str(args.trials)
    if args.out is not None:
        kv["output"] = args.out
    if args.method:
        methods = []
        for m in args.method:
            if m == "greedy_dmc" and args.epsilon is not None:
                m = f"greedy_dmc:{args.epsilon}"
            methods.append(m)
        kv["methods"] = ",".join(methods)
    elif args.epsilon is not None:
        kv["methods"] = f"greedy_dmc:{args.epsilon}"
    if args.weighted:
        kv["source.weighted"] = "true"
    if args.pd is not None:
        kv["sampler.kind"] = "edge_deletion"
        kv["sampler.p_d"] = str(args.pd)
    if args.overlap is not None:
        kv["sampler.kind"] = "random_walk"
        kv["sampler.p"] = str(args.overlap)
    if args.workers is not None:
        kv["workers"] = str(args.workers)
    if args.timing:
        kv["timing"] = "true"
    return kv


def cmd_experiment(args) -> int:
    cfg = load_config(args.config, _overrides(args))
    run_experiment(cfg, quiet=args.quiet)
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config, _overrides(args))
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    sweep(cfg, args.axis, values, quiet=args.quiet)
    return 0


def cmd_stats(args) -> int:
    rep = stats_report(args.path, weighted=args.weighted, delimiter=args.delimiter)
    for key, value in rep.items():
        print(f"{key:<22} {value:.6g}" if isinstance(value, float) else f"{key:<22} {value}")
    return 0


def cmd_gen(args) -> int:
    spec = GeneratorSpec(
        model=args.model, n=args.n, k=args.k, p_er=args.p_er, m_attach=args.m_attach,
        lam=args.lam, partition=args.partition, seed=args.seed,
    )
    g = generate(spec)
    write_edge_list(g, args.output or sys.stdout)
    if not args.quiet and args.output:
        print(f"wrote {g!r} to {args.output}", file=sys.stderr)
    return 0


def cmd_sample(args) -> int:
    g = load_edge_list(args.source, weighted=args.weighted)
    rng = np.random.default_rng(args.seed)
    if args.n is not None:
        g = random_walk_sample(g, args.n, rng)
    if args.overlap is not None:
        pair = overlap_pair(g, args.overlap, rng)
    else:
        pair = edge_deletion_pair(g, args.pd if args.pd is not None else 0.01, rng)
    pair = GraphPair(pair.g1, pair.g2, pair.common_labels, dict(pair.params, seed=args.seed))
    save_pair(pair, args.out)
    if not args.quiet:
        print(f"wrote pair N={pair.g1.n} common={len(pair.common_labels)} to {args.out}")
    return 0


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override any config key")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--method", action="append", choices=METHODS, help="repeatable")
    p.add_argument("--epsilon", type=float, help="threshold for greedy_dmc")
    p.add_argument("--weighted", action="store_true", help="read edge weights from the source file")
    p.add_argument("--pd", type=float, help="edge-deletion sampler with this deletion probability")
    p.add_argument("--overlap", type=float, help="random-walk sampler with this overlap fraction")
    p.add_argument("--workers", type=int)
    p.add_argument("--timing", action="store_true", help="record wall_ms (makes CSV output non-reproducible)")
    p.add_argument("--quiet", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dmc-align", description="Degree-matrix graph alignment toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("align", help="align one graph pair with one method")
    p.add_argument("inputs", nargs="+", help="pair directory, or two edge-list files")
    p.add_argument("--common", help="file of ground-truth common labels (two-file form)")
    p.add_argument("--method", choices=METHODS, default="dmc")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--out", help="write mapping.csv and result.csv here")
    p.add_argument("--dump-matrices", metavar="DIR", help="write both degree matrices as CSV")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("experiment", help="run config-driven trials")
    _add_run_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("sweep", help="run an experiment per value of one parameter")
    _add_run_flags(p)
    p.add_argument("--axis", required=True, choices=["p_d", "p", "k", "epsilon", "lambda"])
    p.add_argument("--values", required=True, help="comma-separated values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stats", help="degree statistics, density and clustering of an edge list")
    p.add_argument("path")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--delimiter")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write a synthetic graph as an edge list")
    p.add_argument("model", choices=MODELS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--p-er", type=float, default=0.5)
    p.add_argument("--m-attach", type=int, default=5)
    p.add_argument("--lambda", dest="lam", type=float, default=10.0)
    p.add_argument("--partition", choices=PARTITIONS, default="random")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sample", help="sample a ground-truth pair from an edge list into a directory")
    p.add_argument("source")
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, help="random-walk downsample to this many nodes first")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--overlap", type=float)
    group.add_argument("--pd", type=float)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (EdgeListError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
