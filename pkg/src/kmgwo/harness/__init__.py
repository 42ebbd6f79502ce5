"""Repeated-run experiments, statistics, CSV export and the command line."""

from .config import load_config
from .experiment import ExperimentSpec, ExperimentSummary, RunFailure, RunResult, mix_seed, run_experiment
from .export import ExportError, export_csv, read_csv
from .stats import wilcoxon_rank_sum, wilcoxon_signed_rank
from .tables import ReproduceConfig, ReproduceResult, reproduce_tables

__all__ = [
    "ExperimentSpec",
    "ExperimentSummary",
    "ExportError",
    "ReproduceConfig",
    "ReproduceResult",
    "RunFailure",
    "RunResult",
    "export_csv",
    "load_config",
    "mix_seed",
    "read_csv",
    "reproduce_tables",
    "run_experiment",
    "wilcoxon_rank_sum",
    "wilcoxon_signed_rank",
]
