"""CSV export of run records and experiment summaries.

Floats are written with 17 significant digits, which round-trips every
IEEE double exactly.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence

from ..core import KmgwoError

RUN_COLUMNS = ["algorithm", "problem", "seed", "iteration", "best_fitness"]
SUMMARY_COLUMNS = ["algorithm", "problem", "repetitions", "avg", "std", "best", "gate_cluster_rate"]


class ExportError(KmgwoError, OSError):
    """Writing or reading a CSV file failed."""


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int,)) and not isinstance(value, bool):
        return str(value)
    return format(float(value), ".17g")


def run_rows(summaries: Iterable) -> Iterable[List[str]]:
    """One row per (run, iteration); iterations are numbered from 1."""
    for s in summaries:
        for run in s.runs:
            for i, v in enumerate(run.record.best_per_iteration, start=1):
                yield [s.algorithm, s.problem, str(run.seed), str(i), fmt(v)]


def summary_rows(summaries: Iterable) -> Iterable[List[str]]:
    for s in summaries:
        yield [s.algorithm, s.problem, str(s.repetitions), fmt(s.avg), fmt(s.std), fmt(s.best), fmt(s.gate_cluster_rate)]


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\r\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise ExportError(f"cannot write {path}: {exc}") from exc
    return path


def export_csv(summaries, path, kind: str = "summary") -> Path:
    """Write summaries (``kind="summary"``) or their per-iteration run records (``kind="runs"``)."""
    summaries = list(summaries)
    if kind == "summary":
        return write_csv(path, SUMMARY_COLUMNS, summary_rows(summaries))
    if kind == "runs":
        return write_csv(path, RUN_COLUMNS, run_rows(summaries))
    raise ValueError(f"unknown export kind {kind!r}")


def read_csv(path) -> List[Dict[str, str]]:
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise ExportError(f"cannot read {path}: {exc}") from exc


def final_values(rows: List[Dict[str, str]], problem: Optional[str] = None) -> Dict[int, float]:
    """Last-iteration best fitness per seed from run-record rows."""
    last: Dict[int, tuple] = {}
    for row in rows:
        if problem is not None and row["problem"] != problem:
            continue
        seed, it = int(row["seed"]), int(row["iteration"])
        if seed not in last or it > last[seed][0]:
            last[seed] = (it, float(row["best_fitness"]))
    return {seed: v for seed, (_, v) in sorted(last.items())}
