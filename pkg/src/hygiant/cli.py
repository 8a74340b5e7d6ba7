"""Command-line front end for the experiment suite.

Exit codes: 0 success, 2 usage error, 3 capacity error (parameters beyond
exact-arithmetic or memory range), 4 failed --check assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .combin import CapacityError, ToleranceSchedule, critical_p0, default_tolerances
from .components import census as build_census
from .experiments import (
    ExperimentConfig,
    Report,
    run_giant,
    run_hypertree,
    run_shadow,
    run_smoothness,
    run_sprinkling,
    run_subcritical,
    run_survival_mc,
)
from .sampling import EdgeSet

EXPERIMENTS = {
    "giant": run_giant,
    "subcritical": run_subcritical,
    "survival": run_survival_mc,
    "smoothness": run_smoothness,
    "sprinkle": run_sprinkling,
    "shadow": run_shadow,
    "hypertree": run_hypertree,
}


def _add_common(sub: argparse.ArgumentParser, with_eps: bool = True) -> None:
    sub.add_argument("--n", type=int, required=True, help="number of vertices")
    sub.add_argument("--k", type=int, required=True, help="edge size")
    sub.add_argument("--j", type=int, required=True, help="connectivity level")
    if with_eps:
        group = sub.add_mutually_exclusive_group(required=True)
        group.add_argument("--eps", type=float, help="distance from threshold, p = (1 +/- eps) p0")
        group.add_argument("--p", type=float, help="edge probability given directly")
        sub.add_argument("--trials", type=int, default=20)
        sub.add_argument("--seed", type=int, default=0, help="master seed")
        sub.add_argument("--out", type=Path, help="report file (stdout if omitted)")
        sub.add_argument("--format", choices=("csv", "json"), default="csv")
        sub.add_argument("--delta", type=float, default=0.1, help="width-floor exponent offset")
        sub.add_argument("--rho1", type=float, help="large-component fraction (default eps^2)")
        sub.add_argument("--gamma", type=float, help="lower-law trial discount (default 0.01 eps)")
        sub.add_argument("--lambda0", type=float, default=0.01, help="expansion tolerance")
        sub.add_argument("--delta0", type=float, default=0.05, help="base smoothness band")
        sub.add_argument("--check", action="store_true",
                         help="exit 4 unless the run passes its health predicate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hygiant",
        description="giant j-component experiments on random k-uniform hypergraphs",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name in EXPERIMENTS:
        sub = subs.add_parser(name, help=f"run the {name} experiment")
        _add_common(sub)
    p0 = subs.add_parser("p0", help="print the critical threshold")
    _add_common(p0, with_eps=False)
    cen = subs.add_parser("census", help="census an explicit edge-rank file")
    cen.add_argument("--edges", type=Path, required=True, help="edge set file (n k seed header)")
    cen.add_argument("--j", type=int, required=True)
    cen.add_argument("--out", type=Path, help="CSV output (stdout if omitted)")
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    regime = "sub" if args.command == "subcritical" else "super"
    if args.p is not None:
        p0 = critical_p0(args.n, args.k, args.j)
        eps = args.p / p0 - 1.0
        if regime == "sub":
            eps = -eps
        if eps <= 0:
            raise ValueError(f"--p {args.p} is on the wrong side of p0 for {args.command}")
    else:
        eps = args.eps
    defaults = default_tolerances(eps, args.delta)
    tol = ToleranceSchedule(
        delta=args.delta,
        rho1=args.rho1 if args.rho1 is not None else defaults.rho1,
        gamma=args.gamma if args.gamma is not None else defaults.gamma,
        lambda0=args.lambda0,
        delta0=args.delta0,
    )
    return ExperimentConfig(
        n=args.n, k=args.k, j=args.j, eps=eps, regime=regime,
        trials=args.trials, master_seed=args.seed, tol=tol,
    )


def _health_check(report: Report) -> bool:
    """Per-experiment sanity predicate backing the --check flag."""
    agg = report.aggregate
    name = report.experiment
    if name == "giant":
        return abs(agg["mean_L1_over_rho"] - 1.0) <= 0.1
    if name == "subcritical":
        return bool(agg["all_within_bound"])
    if name == "survival":
        return all(
            abs(row["survival_freq"] - row["rho_solver"]) <= 3.0 * row["sigma"]
            for row in report.rows
        )
    if name == "smoothness":
        return len(report.rows) == report.config["trials"]
    if name == "sprinkle":
        return agg["frac_merged"] >= 0.9
    if name == "shadow":
        return agg["frac_above_bound"] >= 0.9
    if name == "hypertree":
        return abs(agg["frac_reached"] - agg["rho_lower"]) <= 3.0 * agg["sigma"]
    return True


def _emit(report: Report, args: argparse.Namespace) -> None:
    if args.out is None:
        payload = {
            "experiment": report.experiment,
            "config": report.config,
            "trials": report.rows,
            "aggregate": report.aggregate,
        }
        json.dump(payload, sys.stdout, indent=2, sort_keys=True, default=float)
        sys.stdout.write("\n")
    elif args.format == "json":
        report.write_json(args.out)
    else:
        report.write_csv(args.out)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "p0":
            print(critical_p0(args.n, args.k, args.j))
            return 0
        if args.command == "census":
            cs = build_census(EdgeSet.load(args.edges), args.j)
            if args.out is None:
                print("component_id,size,edges,is_tree")
                trees = cs.classify_trees()
                for i in range(cs.n_components):
                    print(f"{int(cs.comp_ids[i])},{int(cs.sizes[i])},"
                          f"{int(cs.comp_edges[i])},{int(trees[i])}")
            else:
                cs.write_csv(args.out)
            return 0
        config = _config_from_args(args)
        report = EXPERIMENTS[args.command](config)
        _emit(report, args)
        if args.check and not _health_check(report):
            print("check failed", file=sys.stderr)
            return 4
        return 0
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
