"""Command line: validate, run, aggregate, evaluate."""
from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from .domains import BundleError, load_bundle, validate_bundle
from .harness import (
    ConfigError,
    ExperimentConfig,
    GridMismatchError,
    aggregate,
    evaluate_operators,
    load_operators,
    run_experiment,
    write_aggregate,
)


def _validate(args) -> int:
    bundle = load_bundle(args.bundle)
    report = validate_bundle(bundle)
    print(report)
    for name, n in report.plan_lengths.items():
        print(f"  plan length {name}: {n}")
    return 0 if report.ok else 1


def _run(args) -> int:
    config = ExperimentConfig.from_file(args.config)
    seeds = args.seeds or [config.seed]
    for seed in seeds:
        cfg = dataclasses.replace(config, seed=seed)
        if args.output_dir:
            cfg = dataclasses.replace(cfg, output_dir=args.output_dir)
        out = run_experiment(cfg)
        print(out)
    return 0


def _aggregate(args) -> int:
    series = aggregate(args.dirs)
    out = write_aggregate(series, args.out)
    for s in series:
        last = s.points[-1]
        flag = " (single run)" if last.single_run else ""
        print(f"{s.domain} {s.method}: n={last.n} final {last.mean:.3f} +/- {last.se:.3f}{flag}")
    print(out / "summary.csv")
    return 0


def _evaluate(args) -> int:
    bundle = load_bundle(args.bundle)
    ops = load_operators(Path(args.operators).read_text(), bundle.domain)
    horizon = args.horizon or bundle.horizon
    outcomes = evaluate_operators(ops, bundle.test, horizon, args.expansions)
    for o in outcomes:
        print(f"{o.task}: {'solved' if o.solved else 'failed'}")
    rate = sum(o.solved for o in outcomes) / len(outcomes)
    print(f"success rate {rate:.3f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="relexplore", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check a domain bundle against its manifest")
    v.add_argument("bundle", help="bundle directory or bundled name")
    v.set_defaults(func=_validate)

    r = sub.add_parser("run", help="run an experiment from a YAML config")
    r.add_argument("config")
    r.add_argument("--seeds", type=int, nargs="+", help="run these seeds instead of the configured one")
    r.add_argument("--output-dir")
    r.set_defaults(func=_run)

    a = sub.add_parser("aggregate", help="mean and standard error across runs")
    a.add_argument("dirs", nargs="+")
    a.add_argument("--out", default="aggregate")
    a.set_defaults(func=_aggregate)

    e = sub.add_parser("evaluate", help="score an operator file on a bundle's test tasks")
    e.add_argument("operators")
    e.add_argument("bundle")
    e.add_argument("--horizon", type=int)
    e.add_argument("--expansions", type=int, default=2_000)
    e.set_defaults(func=_evaluate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (BundleError, ConfigError, GridMismatchError, FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
