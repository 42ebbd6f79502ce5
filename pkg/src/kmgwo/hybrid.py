"""K-means gated Grey Wolf Optimizer (KMGWO).

Before the main loop the evaluated initial population is split in two with
K-means. A uniform draw then decides the fate of the population: above the
gate threshold the pack is replaced by the cluster holding the fitter
members, otherwise it stays whole. The standard GWO loop follows.

Draw order within one run: population init, ``k`` K-means seeding draws,
one gate draw, then the GWO loop. With the gate forced to keep the full
population the run therefore equals a GWO run whose stream skips
``k + 1`` draws after initialization.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from . import kmeans
from .core import MIN_POPULATION, ConfigurationError, Leaders, Population, Problem, RandomStream
from .gwo import GwoParams, RunRecord, initialize, iterate, update_leaders

TOOK_CLUSTER_1 = "took_cluster_1"
TOOK_CLUSTER_2 = "took_cluster_2"
KEPT_FULL = "kept_full_population"
GUARD_FALLBACK = "guard_fallback"

FORCE_CLUSTER = "cluster-select"
FORCE_FULL = "no-cluster"


@dataclass(frozen=True)
class KmgwoParams:
    gwo: GwoParams = field(default_factory=GwoParams)
    k: int = 2
    gate_threshold: float = 0.5
    min_selected_size: int = MIN_POPULATION
    cluster_fitness: str = "min"
    gate_override: Optional[str] = None
    kmeans_max_iterations: int = kmeans.DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if self.k != 2:
            raise ConfigurationError(f"the cluster gate compares exactly two clusters, got k={self.k}")
        if not 0.0 <= self.gate_threshold <= 1.0:
            raise ConfigurationError(f"gate_threshold must lie in [0, 1], got {self.gate_threshold}")
        if self.min_selected_size < MIN_POPULATION:
            raise ConfigurationError(f"min_selected_size must be >= {MIN_POPULATION}")
        if self.cluster_fitness not in ("min", "mean"):
            raise ConfigurationError(f"cluster_fitness must be 'min' or 'mean', got {self.cluster_fitness!r}")
        if self.gate_override not in (None, FORCE_CLUSTER, FORCE_FULL):
            raise ConfigurationError(f"unknown gate_override {self.gate_override!r}")


@dataclass(frozen=True)
class GateTrace:
    gate_draw: float
    fitness_c1: float
    fitness_c2: float
    decision: str
    selected_size: int

    @property
    def took_cluster(self) -> bool:
        return self.decision in (TOOK_CLUSTER_1, TOOK_CLUSTER_2)


def pre_loop_draws(params: KmgwoParams) -> int:
    """Draws consumed between population init and the GWO loop."""
    return params.k + 1


def cluster_fitness(members, mode: str = "min") -> float:
    """Score of a cluster: its best member (``min``) or the average (``mean``).

    ``members`` is a sequence of evaluated agents or an array of fitness values.
    """
    values = np.array(
        [m.fitness if hasattr(m, "fitness") else m for m in members], dtype=float
    )
    if values.size == 0:
        raise ValueError("cluster_fitness needs at least one member")
    if mode == "min":
        return float(values.min())
    if mode == "mean":
        return float(values.mean())
    raise ConfigurationError(f"unknown cluster fitness mode {mode!r}")


def select_initial_population(
    population: Population, params: KmgwoParams, rng: RandomStream
) -> Tuple[Population, GateTrace]:
    """Cluster the evaluated population and apply the random gate.

    The returned population is either one of the two clusters (positions
    untouched) or the full population. Exactly ``k`` K-means draws and one
    gate draw are consumed on every path.
    """
    if len(population) < MIN_POPULATION or not population.valid:
        raise ValueError(f"need an evaluated population of at least {MIN_POPULATION} agents")
    clustering = kmeans.lloyd(population.positions, params.k, rng, params.kmeans_max_iterations)
    gate_draw = rng.uniform01()

    c1 = clustering.members(0)
    c2 = clustering.members(1)
    fit1 = cluster_fitness(population.fitness[c1], params.cluster_fitness)
    fit2 = cluster_fitness(population.fitness[c2], params.cluster_fitness)

    if params.gate_override == FORCE_FULL:
        use_clusters = False
    elif params.gate_override == FORCE_CLUSTER:
        use_clusters = True
    else:
        use_clusters = gate_draw > params.gate_threshold

    if not use_clusters:
        trace = GateTrace(gate_draw, fit1, fit2, KEPT_FULL, len(population))
        return population, trace

    # exact ties prefer cluster 1
    winner, decision = (c1, TOOK_CLUSTER_1) if fit1 <= fit2 else (c2, TOOK_CLUSTER_2)
    if winner.size < params.min_selected_size:
        return population, GateTrace(gate_draw, fit1, fit2, GUARD_FALLBACK, len(population))
    return population.subset(winner), GateTrace(gate_draw, fit1, fit2, decision, int(winner.size))


def kmgwo_run(
    problem: Problem, params: KmgwoParams, rng: Optional[RandomStream] = None
) -> Tuple[RunRecord, GateTrace]:
    """One KMGWO run: init, cluster gate, then ``max_iterations`` GWO sweeps."""
    start = time.perf_counter()
    gp = params.gwo
    if rng is None:
        rng = RandomStream(gp.seed)
    population = initialize(problem, gp, rng)
    initial_evals = len(population)
    selected, trace = select_initial_population(population, params, rng)
    leaders = update_leaders(selected, Leaders.sentinel(problem.dimension))
    curve, leaders, loop_evals = iterate(
        problem, selected, gp.max_iterations, rng, a_initial=gp.a_initial, leaders=leaders
    )
    record = RunRecord(
        best_per_iteration=curve,
        final_best=leaders.alpha.copy(),
        evaluations=initial_evals + loop_evals,
        wall_time=time.perf_counter() - start,
    )
    return record, trace
