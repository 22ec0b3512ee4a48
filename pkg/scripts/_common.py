"""Shared argument handling for the experiment scripts."""

import argparse
from pathlib import Path

from dmcalign.bench import load_config, sweep

CONFIGS = Path(__file__).resolve().parent / "configs"


def run(config: str, axis: str, values: list, description: str) -> None:
    ap = argparse.ArgumentParser(description=description)
    ap.add_argument("--trials", type=int)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=f"runs/{Path(config).stem}_{axis}")
    ap.add_argument("--values", help="comma-separated override of the default sweep values")
    args = ap.parse_args()

    overrides = {"output": args.out, "workers": str(args.workers)}
    if args.trials is not None:
        overrides["trials"] = str(args.trials)
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    if args.values:
        values = [v.strip() for v in args.values.split(",")]
    cfg = load_config(CONFIGS / config, overrides)
    sweep(cfg, axis, values)
    print(f"tables in {args.out}/sweep.csv and {args.out}/sweep_summary.csv")
