"""Benchmark problems and a small registry keyed by string ids.

Recognized ids: ``cec19:f1`` .. ``cec19:f10`` (also ``f3`` or a bare
``3``), ``vessel``, and ``sphere`` (10-D, [-100, 100]).
"""

from __future__ import annotations

import re
from typing import Optional

import numpy as np

from ..core import Bounds, ConfigurationError, Problem
from .cec2019 import (
    DIMENSIONS,
    Cec2019Function,
    cec2019_function,
    default_data_dir,
    evaluate_cec2019,
    load_cec2019_data,
    write_cec2019_data,
)
from .vessel import (
    DEFAULT_PENALTY,
    ConstraintReport,
    pressure_vessel,
    pv_constraints,
    pv_objective,
    pv_penalized_fitness,
)

_CEC_ID = re.compile(r"^(?:cec19:)?f?(\d+)$", re.IGNORECASE)


def _sphere_batch(X):
    return np.sum(X * X, axis=1)


def _sphere(x):
    return float(np.sum(x * x))


def sphere(dimension: int = 10, limit: float = 100.0) -> Problem:
    return Problem(
        name=f"sphere{dimension}",
        bounds=Bounds.uniform(-limit, limit, dimension),
        objective=_sphere,
        batch_objective=_sphere_batch,
    )


def canonical_id(problem_id: str) -> str:
    pid = problem_id.strip().lower()
    m = _CEC_ID.match(pid)
    if m:
        fid = int(m.group(1))
        if fid not in DIMENSIONS:
            raise ConfigurationError(f"unknown CEC2019 function {problem_id!r}")
        return f"cec19:f{fid}"
    if pid in ("vessel", "pressure-vessel"):
        return "vessel"
    if pid.startswith("sphere"):
        return "sphere"
    raise ConfigurationError(f"unknown problem id {problem_id!r}")


def get_problem(
    problem_id: str,
    data_dir=None,
    penalty: float = DEFAULT_PENALTY,
    literal_constraints: bool = False,
) -> Problem:
    pid = canonical_id(problem_id)
    if pid.startswith("cec19:"):
        return cec2019_function(int(pid[7:]), data_dir).problem()
    if pid == "vessel":
        return pressure_vessel(penalty, literal_constraints)
    return sphere()


__all__ = [
    "Cec2019Function",
    "ConstraintReport",
    "DEFAULT_PENALTY",
    "canonical_id",
    "cec2019_function",
    "default_data_dir",
    "evaluate_cec2019",
    "get_problem",
    "load_cec2019_data",
    "pressure_vessel",
    "pv_constraints",
    "pv_objective",
    "pv_penalized_fitness",
    "sphere",
    "write_cec2019_data",
]
