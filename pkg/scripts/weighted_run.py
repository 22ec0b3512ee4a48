"""Weighted vs plain DMC on a BA graph with random edge weights.

Writes the weighted graph to an edge list first, since weighted runs read
their weights from a file source.
"""

import argparse
from pathlib import Path

import numpy as np

from dmcalign.bench import load_config, run_experiment
from dmcalign.generators import gen_barabasi_albert
from dmcalign.graph import write_edge_list

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--m-attach", type=int, default=5)
    ap.add_argument("--pd", type=float, default=0.01)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="runs/weighted")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    g = gen_barabasi_albert(args.n, args.m_attach, rng)
    g = g.with_weights(rng.uniform(0.5, 2.0, g.edge_count))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_edge_list(g, out / "source.edges")

    cfg = load_config(None, {
        "source.path": str(out / "source.edges"),
        "source.weighted": "true",
        "sampler.kind": "edge_deletion",
        "sampler.p_d": str(args.pd),
        "methods": "dmc, weighted_dmc",
        "trials": str(args.trials),
        "seed": str(args.seed),
        "output": str(out),
    })
    run_experiment(cfg)
