"""Pressure vessel design: minimize fabrication cost of a capped cylinder.

Decision vector ``x = [Ts, Th, R, L]`` (shell thickness, head thickness,
inner radius, cylinder length).

Two constraints differ from a literal transcription that circulates for
this problem. The head-thickness constraint is ``-x2 + 0.00954*x3 <= 0``
(the variant ``-x3 + 0.00954*x3`` never binds and ignores ``x2``), and the
length limit is ``x4 - 240 <= 0`` (``x4 + 240 <= 0`` is unsatisfiable
inside the bounds). Pass ``literal=True`` to get the transcribed forms for
comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from ..core import Bounds, InputError, Problem

LOWER = np.array([0.0, 0.0, 10.0, 10.0])
UPPER = np.array([99.0, 99.0, 200.0, 200.0])
DEFAULT_PENALTY = 1.0e6
VOLUME = 1_296_000.0


@dataclass(frozen=True)
class ConstraintReport:
    g: np.ndarray
    violations: np.ndarray
    feasible: bool


def _check(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != 4:
        raise InputError(f"pressure vessel takes 4 variables, got {x.shape[-1]}")
    return x


def pv_objective(x) -> float:
    x1, x2, x3, x4 = _check(x)
    return float(
        0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3**2 + 3.1661 * x1**2 * x4 + 19.84 * x1**2 * x3
    )


def _constraint_values(X: np.ndarray, literal: bool) -> np.ndarray:
    x1, x2, x3, x4 = X[..., 0], X[..., 1], X[..., 2], X[..., 3]
    g1 = -x1 + 0.0193 * x3
    g2 = (-x3 if literal else -x2) + 0.00954 * x3
    g3 = -math.pi * x3**2 * x4 - (4.0 / 3.0) * math.pi * x3**3 + VOLUME
    g4 = x4 + 240.0 if literal else x4 - 240.0
    return np.stack([g1, g2, g3, g4], axis=-1)


def pv_constraints(x, literal: bool = False) -> ConstraintReport:
    """All four ``g_i(x)``; feasible when every one is ``<= 0``."""
    g = _constraint_values(_check(x), literal)
    if g.ndim != 1:
        raise InputError("pv_constraints takes a single 4-vector")
    viol = np.maximum(0.0, g)
    return ConstraintReport(g=g, violations=viol, feasible=bool(np.all(g <= 0.0)))


def pv_penalized_fitness(x, penalty_coefficient: float = DEFAULT_PENALTY, literal: bool = False) -> float:
    """Cost plus ``penalty_coefficient * sum(max(0, g_i)**2)``."""
    x = _check(x)
    viol = np.maximum(0.0, _constraint_values(x, literal))
    extra = float(np.sum(viol * viol))
    base = pv_objective(x)
    return base if extra == 0.0 else base + penalty_coefficient * extra


def _batch(X: np.ndarray, penalty_coefficient: float, literal: bool) -> np.ndarray:
    x1, x2, x3, x4 = X.T
    cost = 0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3**2 + 3.1661 * x1**2 * x4 + 19.84 * x1**2 * x3
    viol = np.maximum(0.0, _constraint_values(X, literal))
    extra = np.sum(viol * viol, axis=1)
    return np.where(extra == 0.0, cost, cost + penalty_coefficient * extra)


def pressure_vessel(penalty_coefficient: float = DEFAULT_PENALTY, literal: bool = False) -> Problem:
    """The vessel as a :class:`Problem` minimizing the penalized cost."""
    name = "vessel-literal" if literal else "vessel"
    return Problem(
        name=name,
        bounds=Bounds(LOWER, UPPER),
        objective=partial(pv_penalized_fitness, penalty_coefficient=penalty_coefficient, literal=literal),
        batch_objective=partial(_batch, penalty_coefficient=penalty_coefficient, literal=literal),
    )
