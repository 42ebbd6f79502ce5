"""Grey Wolf Optimizer.

Each omega moves to the mean of three points, one drawn around each leader:

    D_L  = |C_L * X_L - x|
    X_L' = X_L - A_L * D_L          for L in (alpha, beta, delta)
    x'   = (X_alpha' + X_beta' + X_delta') / 3

with ``A = 2*a*r1 - a`` and ``C = 2*r2``. The coefficient is written here
with a minus sign so that ``A`` spans ``[-a, a)`` and shrinks to zero as
``a`` decays from 2; a ``+ a`` form would keep ``A`` positive and never
switch the pack into the local-search regime.

Draw-order contract: per agent, per dimension, six uniforms
``r1_alpha, r2_alpha, r1_beta, r2_beta, r1_delta, r2_delta``. Agents are
processed in index order, so one sweep consumes ``6 * n * d`` draws.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import _kernels
from .core import (
    MIN_POPULATION,
    ConfigurationError,
    InputError,
    Leaders,
    ObjectiveError,
    Population,
    Problem,
    RandomStream,
    SearchAgent,
    random_population,
)

DRAWS_PER_DIMENSION = 6


@dataclass(frozen=True)
class GwoParams:
    population_size: int = 30
    max_iterations: int = 500
    seed: int = 0
    a_initial: float = 2.0

    def __post_init__(self):
        if self.population_size < MIN_POPULATION:
            raise ConfigurationError(
                f"population_size must be >= {MIN_POPULATION}, got {self.population_size}"
            )
        if self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigurationError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(eq=False)
class RunRecord:
    """Outcome of one optimizer run.

    Two records compare equal when the convergence curve, the final best
    agent and the evaluation count match exactly; wall time is ignored.
    """

    best_per_iteration: np.ndarray
    final_best: SearchAgent
    evaluations: int
    wall_time: float = field(default=0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunRecord):
            return NotImplemented
        return (
            np.array_equal(self.best_per_iteration, other.best_per_iteration)
            and self.final_best == other.final_best
            and self.evaluations == other.evaluations
        )

    @property
    def final_fitness(self) -> float:
        return self.final_best.fitness

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.best_per_iteration) <= 0.0))


def update_a(iteration: int, max_iterations: int, a_initial: float = 2.0) -> float:
    """Linear decay from ``a_initial`` at iteration 0 to 0 at ``max_iterations``."""
    if max_iterations < 1:
        raise ConfigurationError("max_iterations must be positive")
    if not 0 <= iteration <= max_iterations:
        raise ValueError(f"iteration {iteration} outside [0, {max_iterations}]")
    # a single rounding: a_initial * (M - i) is exact for integer-valued a_initial
    return a_initial * (max_iterations - iteration) / max_iterations


def coefficients_from_draws(a: float, r1, r2) -> Tuple:
    """Map uniforms to ``(A, C)``; works on scalars or arrays."""
    return 2.0 * a * r1 - a, 2.0 * r2


def sample_coefficients(a: float, rng: RandomStream) -> Tuple[float, float]:
    """Draw one ``(A, C)`` pair: ``r1`` first, then ``r2``."""
    if not 0.0 <= a <= 2.0:
        raise ValueError(f"a must lie in [0, 2], got {a}")
    r1 = rng.uniform01()
    r2 = rng.uniform01()
    return coefficients_from_draws(a, r1, r2)


def encircle(x, leader_positions, A, C) -> np.ndarray:
    """Leader-guided move for fixed coefficients.

    ``leader_positions`` is ``(3, d)``; ``A`` and ``C`` broadcast against it
    (a scalar, one value per leader with shape ``(3, 1)``, or ``(3, d)``).
    Does not clamp.
    """
    x = np.asarray(x, dtype=float)
    lead = np.asarray(leader_positions, dtype=float)
    if lead.shape != (3, x.shape[-1]):
        raise InputError(f"leaders must have shape (3, {x.shape[-1]}), got {lead.shape}")
    dist = np.abs(np.asarray(C) * lead - x)
    moved = lead - np.asarray(A) * dist
    return (moved[0] + moved[1] + moved[2]) / 3.0


def leader_guided_position(x, leaders: Leaders, a: float, rng: RandomStream) -> np.ndarray:
    """Move one agent toward the leaders using six fresh draws per dimension."""
    x = np.asarray(x, dtype=float)
    lead = leaders.positions()
    if lead.shape[1] != x.shape[0]:
        raise InputError(f"agent has dimension {x.shape[0]}, leaders have {lead.shape[1]}")
    draws = rng.uniform01((x.shape[0], DRAWS_PER_DIMENSION))
    A, C = coefficients_from_draws(a, draws[:, 0::2].T, draws[:, 1::2].T)
    return encircle(x, lead, A, C)


def update_leaders(population, leaders: Leaders) -> Leaders:
    """Offer each agent, in order, to the leader slots.

    An agent strictly better than a leader takes its slot and pushes the
    worse leaders down one place. Ties keep the incumbent. Accepts a
    :class:`Population` or any sequence of evaluated agents.
    """
    if isinstance(population, Population):
        if not population.valid:
            raise ValueError("population fitness is stale; evaluate before updating leaders")
        fitness, positions = population.fitness, population.positions
    else:
        agents = list(population)
        if any(not ag.valid for ag in agents):
            raise ValueError("every agent needs a valid fitness before updating leaders")
        if not agents:
            return leaders
        fitness = np.array([ag.fitness for ag in agents])
        positions = np.stack([ag.position for ag in agents])

    alpha, beta, delta = leaders.alpha, leaders.beta, leaders.delta
    # only agents beating delta can change anything; order is preserved
    for i in np.flatnonzero(fitness < delta.fitness):
        f = fitness[i]
        if f < alpha.fitness:
            alpha, beta, delta = SearchAgent(positions[i].copy(), f), alpha, beta
        elif f < beta.fitness:
            beta, delta = SearchAgent(positions[i].copy(), f), beta
        elif f < delta.fitness:
            delta = SearchAgent(positions[i].copy(), f)
    return Leaders(alpha, beta, delta)


def _evaluate(problem: Problem, population: Population, iteration: Optional[int]) -> int:
    try:
        return population.evaluate(problem)
    except InputError:
        raise
    except Exception as exc:
        where = "initial population" if iteration is None else f"iteration {iteration}"
        raise ObjectiveError(f"{problem.name}: objective failed at {where}: {exc}") from exc


def initialize(problem: Problem, params: GwoParams, rng: RandomStream) -> Population:
    """Draw and evaluate the starting population."""
    population = random_population(params.population_size, problem, rng)
    _evaluate(problem, population, None)
    return population


def iterate(
    problem: Problem,
    population: Population,
    max_iterations: int,
    rng: RandomStream,
    *,
    a_initial: float = 2.0,
    leaders: Optional[Leaders] = None,
) -> Tuple[np.ndarray, Leaders, int]:
    """Run the main GWO loop on an evaluated population.

    Sweep ``i`` moves every agent with ``a = update_a(i, max_iterations)``,
    clamps, evaluates and then offers the agents to the leaders. Returns the
    alpha fitness after each sweep, the final leaders, and the number of
    objective calls made inside the loop. ``population`` is updated in place.
    """
    if len(population) < MIN_POPULATION:
        raise ConfigurationError(f"need at least {MIN_POPULATION} agents, got {len(population)}")
    if leaders is None:
        leaders = update_leaders(population, Leaders.sentinel(problem.dimension))
    n, d = population.positions.shape
    lower, upper = problem.bounds.lower, problem.bounds.upper
    curve = np.empty(max_iterations)
    evaluations = 0
    for i in range(max_iterations):
        a = update_a(i, max_iterations, a_initial)
        draws = rng.uniform01((n, d, DRAWS_PER_DIMENSION))
        population.move_to(_kernels.gwo_sweep(population.positions, leaders.positions(), a, draws, lower, upper))
        evaluations += _evaluate(problem, population, i)
        leaders = update_leaders(population, leaders)
        curve[i] = leaders.alpha.fitness
    return curve, leaders, evaluations


def gwo_run(problem: Problem, params: GwoParams, rng: Optional[RandomStream] = None) -> RunRecord:
    """Full GWO run; the stream defaults to ``RandomStream(params.seed)``."""
    start = time.perf_counter()
    if rng is None:
        rng = RandomStream(params.seed)
    population = initialize(problem, params, rng)
    curve, leaders, loop_evals = iterate(
        problem, population, params.max_iterations, rng, a_initial=params.a_initial
    )
    return RunRecord(
        best_per_iteration=curve,
        final_best=leaders.alpha.copy(),
        evaluations=len(population) + loop_evals,
        wall_time=time.perf_counter() - start,
    )
