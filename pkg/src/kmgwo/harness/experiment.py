"""Repeated seeded runs of one algorithm on one problem."""

from __future__ import annotations

import dataclasses
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ..core import ConfigurationError, KmgwoError, Problem
from ..gwo import GwoParams, RunRecord, gwo_run
from ..hybrid import GateTrace, KmgwoParams, kmgwo_run
from ..problems import DEFAULT_PENALTY, canonical_id, get_problem

ALGORITHMS = ("gwo", "kmgwo")
_MASK = (1 << 64) - 1


class RunFailure(KmgwoError, RuntimeError):
    """A single run inside an experiment failed; carries the seed."""

    def __init__(self, message: str, seed: int, run_index: int):
        super().__init__(message)
        self.seed = seed
        self.run_index = run_index


def splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def mix_seed(base_seed: int, run_index: int) -> int:
    """Seed of run ``run_index``.

    ``splitmix64`` is a bijection on 64-bit words, so distinct run indices
    (below 2**64) always get distinct seeds for a given base.
    """
    if not 0 <= base_seed <= _MASK or run_index < 0:
        raise ConfigurationError("base seed must be an unsigned 64-bit integer and run index >= 0")
    return splitmix64((base_seed + run_index * 0x9E3779B97F4A7C15) & _MASK)


@dataclass(frozen=True)
class ExperimentSpec:
    """What to run. ``params`` supplies everything but the seed."""

    algorithm: str
    problem: str
    repetitions: int = 30
    base_seed: int = 0
    params: Union[GwoParams, KmgwoParams, None] = None
    output: Optional[Path] = None
    data_dir: Optional[str] = None
    penalty: float = DEFAULT_PENALTY
    literal_constraints: bool = False
    workers: int = 1

    def __post_init__(self):
        algo = self.algorithm.lower()
        if algo not in ALGORITHMS:
            raise ConfigurationError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        object.__setattr__(self, "algorithm", algo)
        object.__setattr__(self, "problem", canonical_id(self.problem))
        if self.repetitions < 1:
            raise ConfigurationError("repetitions must be positive")
        if not 0 <= self.base_seed <= _MASK:
            raise ConfigurationError("base_seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ConfigurationError("workers must be positive")
        params = self.params
        if params is None:
            params = KmgwoParams() if algo == "kmgwo" else GwoParams()
        elif algo == "kmgwo" and isinstance(params, GwoParams):
            params = KmgwoParams(gwo=params)
        elif algo == "gwo" and isinstance(params, KmgwoParams):
            params = params.gwo
        object.__setattr__(self, "params", params)

    @property
    def gwo_params(self) -> GwoParams:
        return self.params.gwo if isinstance(self.params, KmgwoParams) else self.params

    def seeds(self) -> List[int]:
        return [mix_seed(self.base_seed, r) for r in range(self.repetitions)]

    def params_for(self, seed: int):
        if isinstance(self.params, KmgwoParams):
            return dataclasses.replace(self.params, gwo=dataclasses.replace(self.params.gwo, seed=seed))
        return dataclasses.replace(self.params, seed=seed)

    def build_problem(self) -> Problem:
        return get_problem(self.problem, self.data_dir, self.penalty, self.literal_constraints)


@dataclass
class RunResult:
    run_index: int
    seed: int
    record: RunRecord
    trace: Optional[GateTrace] = None


@dataclass
class ExperimentSummary:
    algorithm: str
    problem: str
    runs: List[RunResult] = field(default_factory=list)

    @property
    def repetitions(self) -> int:
        return len(self.runs)

    @property
    def seeds(self) -> List[int]:
        return [r.seed for r in self.runs]

    @property
    def finals(self) -> np.ndarray:
        return np.array([r.record.final_fitness for r in self.runs])

    @property
    def traces(self) -> List[GateTrace]:
        return [r.trace for r in self.runs if r.trace is not None]

    @property
    def avg(self) -> float:
        return float(np.mean(self.finals))

    @property
    def std(self) -> float:
        """Sample (n - 1) standard deviation; 0 for a single run."""
        f = self.finals
        return float(np.std(f, ddof=1)) if f.size > 1 else 0.0

    @property
    def best(self) -> float:
        return float(np.min(self.finals))

    @property
    def best_run(self) -> RunResult:
        return self.runs[int(np.argmin(self.finals))]

    @property
    def gate_cluster_rate(self) -> Optional[float]:
        """Fraction of runs whose gate switched to a cluster (KMGWO only)."""
        traces = self.traces
        if not traces:
            return None
        return sum(t.took_cluster for t in traces) / len(traces)

    def all_monotone(self) -> bool:
        return all(r.record.is_monotone() for r in self.runs)


# one problem per (spec) in each worker process; objectives are pure
_PROBLEMS: Dict[Tuple, Problem] = {}


def _problem_for(spec: ExperimentSpec) -> Problem:
    key = (spec.problem, spec.data_dir, spec.penalty, spec.literal_constraints)
    if key not in _PROBLEMS:
        _PROBLEMS[key] = spec.build_problem()
    return _PROBLEMS[key]


def run_single(spec: ExperimentSpec, run_index: int) -> RunResult:
    seed = mix_seed(spec.base_seed, run_index)
    problem = _problem_for(spec)
    params = spec.params_for(seed)
    try:
        if spec.algorithm == "kmgwo":
            record, trace = kmgwo_run(problem, params)
            return RunResult(run_index, seed, record, trace)
        return RunResult(run_index, seed, gwo_run(problem, params))
    except Exception as exc:
        raise RunFailure(
            f"{spec.algorithm} on {spec.problem}, run {run_index} (seed {seed}) failed: {exc}",
            seed,
            run_index,
        ) from exc


def _run_chunk(spec: ExperimentSpec, indices: List[int]) -> List[RunResult]:
    return [run_single(spec, i) for i in indices]


def run_experiment(spec: ExperimentSpec) -> ExperimentSummary:
    """Execute all repetitions and aggregate them in run-index order.

    With ``spec.workers > 1`` the runs are spread over a process pool; the
    results equal the sequential ones because each run owns its stream.
    If ``spec.output`` is set, run records and the summary are written there
    as CSV.
    """
    # fail early on a bad problem id or data directory
    _problem_for(spec)
    indices = list(range(spec.repetitions))
    if spec.workers == 1:
        results = _run_chunk(spec, indices)
    else:
        chunks = [indices[w :: spec.workers] for w in range(spec.workers)]
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            parts = list(pool.map(_run_chunk, [spec] * len(chunks), chunks))
        results = [r for part in parts for r in part]
    results.sort(key=lambda r: r.run_index)
    summary = ExperimentSummary(spec.algorithm, spec.problem, results)
    if spec.output is not None:
        from .export import export_csv

        out = Path(spec.output)
        stem = experiment_stem(spec.algorithm, spec.problem)
        export_csv([summary], out / f"{stem}_runs.csv", kind="runs")
        export_csv([summary], out / f"{stem}_summary.csv", kind="summary")
    return summary


def experiment_stem(algorithm: str, problem: str) -> str:
    return f"{algorithm}_{re.sub(r'[^A-Za-z0-9]+', '-', problem)}"


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))
