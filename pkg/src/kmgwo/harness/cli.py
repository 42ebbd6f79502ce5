"""Command-line entry point: ``kmgwo {run,suite,vessel,stats,reproduce}``.

Exit codes: 0 success, 2 configuration error, 3 data ingestion error,
4 runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from ..core import ConfigurationError, DataIngestionError
from ..gwo import GwoParams
from ..hybrid import KmgwoParams
from ..problems import DEFAULT_PENALTY, canonical_id, pv_constraints
from .config import load_config
from .experiment import ExperimentSpec, run_experiment
from .export import export_csv, final_values, read_csv
from .stats import wilcoxon_rank_sum
from .tables import CEC_FUNCTIONS, ReproduceConfig, reproduce_tables

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_RUNTIME = 4

DEFAULTS: Dict[str, object] = {
    "algo": "kmgwo",
    "problem": "cec19:f1",
    "agents": 30,
    "iters": 500,
    "reps": None,  # per command
    "vessel_reps": 15,
    "seed": 0,
    "data_dir": None,
    "out": None,
    "penalty": DEFAULT_PENALTY,
    "cluster_fitness": "min",
    "paper_literal_constraints": False,
    "workers": 1,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    # defaults are None so that config-file values can fill the gaps
    p.add_argument("--config", type=Path, help="key=value file; flags override its values")
    p.add_argument("--agents", type=int, help="population size (default 30)")
    p.add_argument("--iters", type=int, help="iterations per run (default 500)")
    p.add_argument("--seed", type=int, help="base seed, unsigned 64-bit (default 0)")
    p.add_argument("--data-dir", dest="data_dir", help="CEC2019 data directory (fallback: $KMGWO_DATA_DIR, then bundled)")
    p.add_argument("--out", help="output file or directory")
    p.add_argument("--penalty", type=float, help="vessel penalty coefficient (default 1e6)")
    p.add_argument("--cluster-fitness", dest="cluster_fitness", choices=("min", "mean"))
    p.add_argument(
        "--paper-literal-constraints",
        dest="paper_literal_constraints",
        action="store_true",
        default=None,
        help="use the literal transcription of the vessel constraints g2 and g4",
    )
    p.add_argument("--workers", type=int, help="worker processes for repeated runs (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmgwo", description="GWO and KMGWO experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="one run; prints the final best fitness")
    p.add_argument("--algo", choices=("gwo", "kmgwo"))
    p.add_argument("--problem", help="cec19:fN, fN, vessel or sphere")
    _add_common(p)

    p = sub.add_parser("suite", help="repeated runs on CEC2019 F1-F10 (default 30 reps)")
    p.add_argument("--algo", choices=("gwo", "kmgwo"), help="only this algorithm (default both)")
    p.add_argument("--reps", type=int)
    _add_common(p)

    p = sub.add_parser("vessel", help="repeated pressure vessel runs (default 15 reps)")
    p.add_argument("--algo", choices=("gwo", "kmgwo"), help="only this algorithm (default both)")
    p.add_argument("--reps", type=int)
    _add_common(p)

    p = sub.add_parser("stats", help="rank-sum test between final values in two run-record CSVs")
    p.add_argument("runs_a", type=Path)
    p.add_argument("runs_b", type=Path)
    p.add_argument("--problem", help="restrict both files to this problem id")
    p.add_argument("--config", type=Path)

    p = sub.add_parser("reproduce", help="all tables into --out (default ./results)")
    p.add_argument("--reps", type=int)
    p.add_argument("--vessel-reps", dest="vessel_reps", type=int)
    _add_common(p)
    return parser


def resolve(args: argparse.Namespace) -> Dict[str, object]:
    """Defaults < config file < command-line flags; data dir falls back to the environment."""
    values = dict(DEFAULTS)
    if getattr(args, "config", None) is not None:
        from_file = load_config(args.config)
        values.update(from_file)
        if "algo" in from_file:
            values["_algo_given"] = True
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        values[key] = value
    if values.get("data_dir") is None and os.environ.get("KMGWO_DATA_DIR"):
        values["data_dir"] = os.environ["KMGWO_DATA_DIR"]
    values["_algo_given"] = bool(values.get("_algo_given")) or getattr(args, "algo", None) is not None
    return values


def _spec(v: Dict[str, object], algo: str, problem: str, reps: int, out=None) -> ExperimentSpec:
    gp = GwoParams(population_size=v["agents"], max_iterations=v["iters"], seed=v["seed"])
    params = KmgwoParams(gwo=gp, cluster_fitness=v["cluster_fitness"]) if algo == "kmgwo" else gp
    return ExperimentSpec(
        algorithm=algo,
        problem=problem,
        repetitions=reps,
        base_seed=v["seed"],
        params=params,
        output=out,
        data_dir=v["data_dir"],
        penalty=v["penalty"],
        literal_constraints=v["paper_literal_constraints"],
        workers=v["workers"],
    )


def cmd_run(v) -> int:
    from ..gwo import gwo_run
    from ..hybrid import kmgwo_run

    # a single run uses --seed as is, without per-run mixing
    spec = _spec(v, v["algo"], v["problem"], 1)
    problem = spec.build_problem()
    params = spec.params_for(v["seed"])
    if spec.algorithm == "kmgwo":
        record, trace = kmgwo_run(problem, params)
        print(f"gate: draw={trace.gate_draw:.6f} decision={trace.decision} population={trace.selected_size}")
    else:
        record = gwo_run(problem, params)
    print(f"{spec.algorithm} {spec.problem} seed={v['seed']} evaluations={record.evaluations}")
    print(f"final best: {record.final_fitness:.17g}")
    print("position: " + " ".join(f"{x:.17g}" for x in record.final_best.position))
    if v["out"]:
        from .experiment import ExperimentSummary, RunResult

        summary = ExperimentSummary(spec.algorithm, spec.problem, [RunResult(0, int(v["seed"]), record)])
        print(f"wrote {export_csv([summary], v['out'], kind='runs')}")
    return EXIT_OK


def _algos(v) -> List[str]:
    return [v["algo"]] if v.get("_algo_given") else ["gwo", "kmgwo"]


def _print_summary(s) -> None:
    rate = "" if s.gate_cluster_rate is None else f" cluster-rate {s.gate_cluster_rate:.2f}"
    print(f"{s.algorithm:<6} {s.problem:<10} avg {s.avg:.6g} std {s.std:.4g} best {s.best:.6g}{rate}")


def cmd_suite(v) -> int:
    reps = 30 if v["reps"] is None else v["reps"]
    out = Path(v["out"]) if v["out"] else None
    summaries = []
    for fid in CEC_FUNCTIONS:
        for algo in _algos(v):
            s = run_experiment(_spec(v, algo, fid, reps, out))
            _print_summary(s)
            summaries.append(s)
    if out is not None:
        print(f"wrote {export_csv(summaries, out / 'summaries.csv')}")
    return EXIT_OK


def cmd_vessel(v) -> int:
    reps = 15 if v["reps"] is None else v["reps"]
    out = Path(v["out"]) if v["out"] else None
    for algo in _algos(v):
        s = run_experiment(_spec(v, algo, "vessel", reps, out))
        _print_summary(s)
        best = s.best_run.record.final_best.position
        rep = pv_constraints(best)
        print(f"       best design {' '.join(f'{x:.6f}' for x in best)} feasible={rep.feasible}")
    return EXIT_OK


def cmd_stats(v, args) -> int:
    problem = canonical_id(args.problem) if args.problem else None
    a = final_values(read_csv(args.runs_a), problem)
    b = final_values(read_csv(args.runs_b), problem)
    if not a or not b:
        raise ConfigurationError("both run-record files need at least one run")
    p = wilcoxon_rank_sum(list(a.values()), list(b.values()))
    print(f"runs: {len(a)} vs {len(b)}")
    print(f"rank-sum p-value: {p:.17g}")
    return EXIT_OK


def cmd_reproduce(v) -> int:
    cfg = ReproduceConfig.from_mapping(v)
    result = reproduce_tables(cfg)
    print(result.files["report"].read_text(), end="")
    for path in result.files.values():
        print(f"wrote {path}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        v = resolve(args)
        if args.command == "run":
            v["problem"] = canonical_id(str(v["problem"]))
            return cmd_run(v)
        if args.command == "suite":
            return cmd_suite(v)
        if args.command == "vessel":
            return cmd_vessel(v)
        if args.command == "stats":
            return cmd_stats(v, args)
        return cmd_reproduce(v)
    except ConfigurationError as exc:
        print(f"kmgwo: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DataIngestionError as exc:
        print(f"kmgwo: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"kmgwo: run failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
