"""Grey Wolf Optimizer, K-means and the K-means gated hybrid (KMGWO).

Also ships the CEC2019 benchmark suite, the pressure vessel design problem
and an experiment harness with rank-sum statistics and CSV export.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .core import (
    Bounds,
    ConfigurationError,
    DataIngestionError,
    InputError,
    KmgwoError,
    Leaders,
    ObjectiveError,
    Population,
    Problem,
    RandomStream,
    SearchAgent,
    clamp,
    random_population,
)
from .gwo import GwoParams, RunRecord, gwo_run, update_a, update_leaders
from .hybrid import GateTrace, KmgwoParams, kmgwo_run, select_initial_population
from .kmeans import Clustering, lloyd

__version__ = "0.1.0"

__all__ = [
    "Bounds",
    "Clustering",
    "ConfigurationError",
    "DataIngestionError",
    "GateTrace",
    "GwoParams",
    "InputError",
    "KERNEL_BACKEND",
    "KmgwoError",
    "KmgwoParams",
    "Leaders",
    "ObjectiveError",
    "Population",
    "Problem",
    "RandomStream",
    "RunRecord",
    "SearchAgent",
    "clamp",
    "gwo_run",
    "kmgwo_run",
    "lloyd",
    "random_population",
    "select_initial_population",
    "update_a",
    "update_leaders",
]
