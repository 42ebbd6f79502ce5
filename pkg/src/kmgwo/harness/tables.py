"""Reproduce the benchmark tables: CEC2019 comparison, p-values, vessel runs.

Outputs written to the output directory:

* ``table1.csv``  one row per CEC2019 function: avg/std/best for GWO and KMGWO
* ``table3.csv``  rank-sum p-value of KMGWO vs GWO per-run finals, per function
* ``table4.csv``  one row per vessel run (GWO and KMGWO), with the design,
  constraint values and feasibility under the corrected constraints
* ``summaries.csv`` and ``runs/*.csv``  summaries and per-iteration records
* ``report.txt``  pooled signed-rank p over the ten average pairs and the
  direction count

All files are deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..core import ConfigurationError
from ..gwo import GwoParams
from ..hybrid import KmgwoParams
from ..problems import DEFAULT_PENALTY, pv_constraints, pv_objective
from .config import load_config
from .experiment import ExperimentSpec, ExperimentSummary, experiment_stem, run_experiment
from .export import export_csv, fmt, write_csv
from .stats import wilcoxon_rank_sum, wilcoxon_signed_rank

CEC_FUNCTIONS = tuple(f"cec19:f{i}" for i in range(1, 11))


@dataclass
class ReproduceConfig:
    agents: int = 30
    iters: int = 500
    reps: int = 30
    vessel_reps: int = 15
    seed: int = 0
    data_dir: Optional[str] = None
    out: str = "results"
    penalty: float = DEFAULT_PENALTY
    cluster_fitness: str = "min"
    paper_literal_constraints: bool = False
    workers: int = 1

    @classmethod
    def from_mapping(cls, values: Dict[str, object]) -> "ReproduceConfig":
        known = {k: v for k, v in values.items() if k in cls.__dataclass_fields__ and v is not None}
        return cls(**known)


@dataclass
class ReproduceResult:
    cec: Dict[str, Dict[str, ExperimentSummary]] = field(default_factory=dict)
    vessel: Dict[str, ExperimentSummary] = field(default_factory=dict)
    p_values: Dict[str, float] = field(default_factory=dict)
    pooled_p: float = float("nan")
    direction_count: int = 0
    files: Dict[str, Path] = field(default_factory=dict)


def pooled_standard_error(a: ExperimentSummary, b: ExperimentSummary) -> float:
    return math.sqrt(a.std**2 / a.repetitions + b.std**2 / b.repetitions)


def no_worse_within_se(gwo: ExperimentSummary, kmgwo: ExperimentSummary) -> bool:
    """KMGWO mean at most one pooled standard error above the GWO mean."""
    return kmgwo.avg <= gwo.avg + pooled_standard_error(gwo, kmgwo)


def _spec(cfg: ReproduceConfig, algo: str, problem: str, reps: int) -> ExperimentSpec:
    gp = GwoParams(population_size=cfg.agents, max_iterations=cfg.iters)
    params = KmgwoParams(gwo=gp, cluster_fitness=cfg.cluster_fitness) if algo == "kmgwo" else gp
    return ExperimentSpec(
        algorithm=algo,
        problem=problem,
        repetitions=reps,
        base_seed=cfg.seed,
        params=params,
        data_dir=cfg.data_dir,
        penalty=cfg.penalty,
        literal_constraints=cfg.paper_literal_constraints,
        workers=cfg.workers,
    )


def run_cec_suite(cfg: ReproduceConfig, algorithms=("gwo", "kmgwo")) -> Dict[str, Dict[str, ExperimentSummary]]:
    return {
        fid: {algo: run_experiment(_spec(cfg, algo, fid, cfg.reps)) for algo in algorithms}
        for fid in CEC_FUNCTIONS
    }


def run_vessel(cfg: ReproduceConfig, algorithms=("gwo", "kmgwo")) -> Dict[str, ExperimentSummary]:
    return {algo: run_experiment(_spec(cfg, algo, "vessel", cfg.vessel_reps)) for algo in algorithms}


TABLE1_COLUMNS = [
    "function", "gwo_avg", "gwo_std", "gwo_best", "kmgwo_avg", "kmgwo_std", "kmgwo_best", "kmgwo_gate_cluster_rate",
]
TABLE3_COLUMNS = ["function", "n_gwo", "n_kmgwo", "p_value"]
TABLE4_COLUMNS = [
    "algorithm", "run", "seed", "penalized_fitness", "cost",
    "x1", "x2", "x3", "x4", "g1", "g2", "g3", "g4", "feasible",
]


def table1_rows(cec):
    for fid, pair in cec.items():
        g, k = pair["gwo"], pair["kmgwo"]
        yield [fid, fmt(g.avg), fmt(g.std), fmt(g.best), fmt(k.avg), fmt(k.std), fmt(k.best), fmt(k.gate_cluster_rate)]


def table4_rows(vessel):
    for algo, summary in vessel.items():
        for run in summary.runs:
            x = run.record.final_best.position
            rep = pv_constraints(x)
            yield [
                algo, str(run.run_index + 1), str(run.seed), fmt(run.record.final_fitness), fmt(pv_objective(x)),
                *(fmt(v) for v in x), *(fmt(v) for v in rep.g), "1" if rep.feasible else "0",
            ]


def reproduce_tables(config: Union[str, Path, ReproduceConfig, None] = None, **overrides) -> ReproduceResult:
    """Run both algorithms on F1-F10 and the vessel and write the tables.

    ``config`` is a key=value file path or a :class:`ReproduceConfig`;
    keyword overrides win over file values.
    """
    if config is None:
        cfg = ReproduceConfig()
    elif isinstance(config, ReproduceConfig):
        cfg = config
    else:
        cfg = ReproduceConfig.from_mapping(load_config(config))
    if overrides:
        cfg = ReproduceConfig.from_mapping({**cfg.__dict__, **overrides})
    if cfg.reps < 1 or cfg.vessel_reps < 1:
        raise ConfigurationError("repetitions must be positive")

    out = Path(cfg.out)
    result = ReproduceResult()
    result.cec = run_cec_suite(cfg)
    result.vessel = run_vessel(cfg)

    for fid, pair in result.cec.items():
        result.p_values[fid] = wilcoxon_rank_sum(pair["kmgwo"].finals, pair["gwo"].finals)
    gwo_avgs = [pair["gwo"].avg for pair in result.cec.values()]
    km_avgs = [pair["kmgwo"].avg for pair in result.cec.values()]
    result.pooled_p = wilcoxon_signed_rank(km_avgs, gwo_avgs)
    result.direction_count = sum(no_worse_within_se(p["gwo"], p["kmgwo"]) for p in result.cec.values())

    files = result.files
    files["table1"] = write_csv(out / "table1.csv", TABLE1_COLUMNS, table1_rows(result.cec))
    files["table3"] = write_csv(
        out / "table3.csv",
        TABLE3_COLUMNS,
        (
            [fid, str(p["gwo"].repetitions), str(p["kmgwo"].repetitions), fmt(result.p_values[fid])]
            for fid, p in result.cec.items()
        ),
    )
    files["table4"] = write_csv(out / "table4.csv", TABLE4_COLUMNS, table4_rows(result.vessel))

    every = [s for pair in result.cec.values() for s in pair.values()] + list(result.vessel.values())
    files["summaries"] = export_csv(every, out / "summaries.csv", kind="summary")
    for s in every:
        export_csv([s], out / "runs" / f"{experiment_stem(s.algorithm, s.problem)}_runs.csv", kind="runs")

    files["report"] = out / "report.txt"
    files["report"].write_text(render_report(cfg, result))
    return result


def render_report(cfg: ReproduceConfig, result: ReproduceResult) -> str:
    lines = [
        f"agents={cfg.agents} iterations={cfg.iters} cec_reps={cfg.reps} vessel_reps={cfg.vessel_reps} seed={cfg.seed}",
        "",
        f"{'function':<10} {'GWO avg':>14} {'GWO std':>12} {'KMGWO avg':>14} {'KMGWO std':>12} {'p':>10}",
    ]
    for fid, pair in result.cec.items():
        g, k = pair["gwo"], pair["kmgwo"]
        lines.append(f"{fid:<10} {g.avg:14.6g} {g.std:12.4g} {k.avg:14.6g} {k.std:12.4g} {result.p_values[fid]:10.3g}")
    lines += [
        "",
        f"pooled signed-rank p over the {len(result.cec)} average pairs: {result.pooled_p:.6g}",
        f"functions where KMGWO avg <= GWO avg + pooled SE: {result.direction_count} of {len(result.cec)}",
        "",
    ]
    for algo, s in result.vessel.items():
        best = s.best_run.record.final_best.position
        feas = pv_constraints(best).feasible
        lines.append(
            f"vessel {algo}: best {s.best:.6f} avg {s.avg:.6f} std {s.std:.4g} "
            f"best design {[round(float(v), 6) for v in best]} feasible={feas}"
        )
    return "\n".join(lines) + "\n"
