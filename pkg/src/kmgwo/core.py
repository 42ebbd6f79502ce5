"""Shared types for the optimizers: bounds, agents, problems and the random stream.

Everything here minimizes. Maximization problems must be wrapped by negating
the objective before they reach an optimizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

__all__ = [
    "KmgwoError",
    "ConfigurationError",
    "InputError",
    "DataIngestionError",
    "ObjectiveError",
    "Bounds",
    "SearchAgent",
    "Leaders",
    "Problem",
    "RandomStream",
    "Population",
    "clamp",
    "random_population",
    "MIN_POPULATION",
]

MIN_POPULATION = 4  # alpha, beta, delta and at least one omega
_U64 = (1 << 64) - 1


class KmgwoError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(KmgwoError, ValueError):
    """Invalid parameters or experiment setup."""


class InputError(KmgwoError, ValueError):
    """Malformed numeric input, e.g. a vector of the wrong length."""


class DataIngestionError(KmgwoError):
    """A benchmark data file is missing or cannot be parsed."""


class ObjectiveError(KmgwoError, RuntimeError):
    """An objective evaluation failed during a run."""


@dataclass(frozen=True)
class Bounds:
    """Per-dimension box ``lower[d] <= x[d] <= upper[d]``."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).reshape(-1)
        upper = np.array(self.upper, dtype=float).reshape(-1)
        if lower.size < 1 or lower.shape != upper.shape:
            raise ConfigurationError(
                f"bounds need equal, non-empty lengths (got {lower.size} and {upper.size})"
            )
        if not np.all(lower < upper):
            bad = int(np.argmin(lower < upper))
            raise ConfigurationError(
                f"lower bound must be below upper bound in every dimension (dimension {bad})"
            )
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @classmethod
    def uniform(cls, low: float, high: float, dimension: int) -> "Bounds":
        return cls(np.full(dimension, float(low)), np.full(dimension, float(high)))

    @property
    def dimension(self) -> int:
        return self.lower.size

    def __len__(self) -> int:
        return self.lower.size

    def contains(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


def clamp(position, bounds: Bounds) -> np.ndarray:
    """Saturate ``position`` into ``bounds`` componentwise.

    Works on a single vector or on a ``(n, d)`` stack of vectors.
    """
    x = np.asarray(position, dtype=float)
    if x.shape[-1] != bounds.dimension:
        raise InputError(
            f"position has dimension {x.shape[-1]}, bounds have {bounds.dimension}"
        )
    return np.minimum(bounds.upper, np.maximum(bounds.lower, x))


class SearchAgent:
    """A position plus its cached fitness.

    Assigning a new position invalidates the fitness.
    """

    __slots__ = ("_position", "_fitness", "_valid")

    def __init__(self, position, fitness: Optional[float] = None):
        self._position = np.array(position, dtype=float).reshape(-1)
        self._fitness = float("nan") if fitness is None else float(fitness)
        self._valid = fitness is not None

    @property
    def position(self) -> np.ndarray:
        return self._position

    @position.setter
    def position(self, value) -> None:
        self._position = np.array(value, dtype=float).reshape(-1)
        self._fitness = float("nan")
        self._valid = False

    @property
    def fitness(self) -> float:
        return self._fitness

    @fitness.setter
    def fitness(self, value: float) -> None:
        self._fitness = float(value)
        self._valid = True

    @property
    def valid(self) -> bool:
        return self._valid

    def copy(self) -> "SearchAgent":
        return SearchAgent(self._position.copy(), self._fitness if self._valid else None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SearchAgent):
            return NotImplemented
        return (
            np.array_equal(self._position, other._position)
            and self._valid == other._valid
            and (
                not self._valid
                or self._fitness == other._fitness
                or (np.isnan(self._fitness) and np.isnan(other._fitness))
            )
        )

    def __repr__(self) -> str:
        fit = f"{self._fitness:.6g}" if self._valid else "stale"
        return f"SearchAgent(fitness={fit}, position={np.array2string(self._position, precision=4)})"


@dataclass
class Leaders:
    """The three best agents seen so far, best first."""

    alpha: SearchAgent
    beta: SearchAgent
    delta: SearchAgent

    @classmethod
    def sentinel(cls, dimension: int) -> "Leaders":
        """Leaders with infinite fitness, displaced by any finite agent."""
        return cls(*(SearchAgent(np.zeros(dimension), float("inf")) for _ in range(3)))

    def __iter__(self) -> Iterator[SearchAgent]:
        return iter((self.alpha, self.beta, self.delta))

    @property
    def fitness(self) -> tuple:
        return (self.alpha.fitness, self.beta.fitness, self.delta.fitness)

    def positions(self) -> np.ndarray:
        """``(3, d)`` array of alpha, beta, delta positions."""
        return np.stack([self.alpha.position, self.beta.position, self.delta.position])

    def is_ordered(self) -> bool:
        a, b, d = self.fitness
        return a <= b <= d


@dataclass(frozen=True)
class Problem:
    """A bounded minimization problem.

    ``objective`` maps one position vector to a float. ``batch_objective``
    (optional) maps an ``(n, d)`` array to ``n`` values and must agree with
    ``objective`` row by row; optimizers prefer it when present.
    Objectives must be pure so concurrent runs can share a problem.
    """

    name: str
    bounds: Bounds
    objective: Callable[[np.ndarray], float]
    batch_objective: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return self.bounds.dimension

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise InputError(f"{self.name}: expected a vector of length {self.dimension}, got shape {x.shape}")
        return float(self.objective(x))

    def evaluate_many(self, positions: np.ndarray) -> np.ndarray:
        positions = np.asarray(positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != self.dimension:
            raise InputError(
                f"{self.name}: expected an (n, {self.dimension}) array, got shape {positions.shape}"
            )
        if self.batch_objective is not None:
            values = np.asarray(self.batch_objective(positions), dtype=float).reshape(-1)
        else:
            values = np.array([self.objective(row) for row in positions], dtype=float)
        if values.shape[0] != positions.shape[0]:
            raise ObjectiveError(f"{self.name}: objective returned {values.shape[0]} values for {positions.shape[0]} points")
        return values


class RandomStream:
    """Seedable uniform stream, one per run.

    Backed by numpy's PCG64 bit generator. Every double consumes exactly one
    64-bit output, so ``uniform01(n)`` yields the same values as ``n``
    scalar calls in a row; the draw-order contracts of the optimizers rely
    on this.
    """

    GENERATOR = "numpy.random.PCG64"

    def __init__(self, seed: int):
        seed = int(seed)
        if not 0 <= seed <= _U64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))
        self.draws = 0

    def uniform01(self, size=None):
        """Uniform draws in ``[0, 1)``; a float when ``size`` is None."""
        if size is None:
            self.draws += 1
            return float(self._gen.random())
        out = self._gen.random(size)
        self.draws += out.size
        return out

    def skip(self, count: int) -> None:
        """Consume and discard ``count`` uniform draws."""
        if count < 0:
            raise ConfigurationError("cannot skip a negative number of draws")
        if count:
            self.uniform01(count)


class Population:
    """Positions of ``n`` agents as an ``(n, d)`` array plus cached fitness.

    Indexing yields :class:`SearchAgent` copies; writing positions through
    :meth:`move_to` marks all fitness values stale.
    """

    def __init__(self, positions: np.ndarray, fitness: Optional[np.ndarray] = None):
        self.positions = np.array(positions, dtype=float)
        if self.positions.ndim != 2:
            raise InputError("population positions must be a 2-D array")
        if fitness is None:
            self.fitness = np.full(len(self.positions), np.nan)
            self.valid = False
        else:
            self.fitness = np.array(fitness, dtype=float).reshape(-1)
            if self.fitness.shape[0] != self.positions.shape[0]:
                raise InputError("one fitness value per agent is required")
            self.valid = True

    def __len__(self) -> int:
        return self.positions.shape[0]

    def __getitem__(self, i: int) -> SearchAgent:
        return SearchAgent(self.positions[i].copy(), self.fitness[i] if self.valid else None)

    def __iter__(self) -> Iterator[SearchAgent]:
        return (self[i] for i in range(len(self)))

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    def move_to(self, positions: np.ndarray) -> None:
        self.positions = positions
        self.fitness = np.full(len(positions), np.nan)
        self.valid = False

    def evaluate(self, problem: Problem) -> int:
        """Fill in fitness for every agent; returns the number of objective calls."""
        self.fitness = problem.evaluate_many(self.positions)
        self.valid = True
        return len(self)

    def subset(self, indices: Sequence[int]) -> "Population":
        idx = np.asarray(indices, dtype=int)
        return Population(self.positions[idx], self.fitness[idx] if self.valid else None)

    @classmethod
    def from_agents(cls, agents: Sequence[SearchAgent]) -> "Population":
        positions = np.stack([a.position for a in agents])
        if all(a.valid for a in agents):
            return cls(positions, np.array([a.fitness for a in agents]))
        return cls(positions)


def random_population(n: int, problem: Problem, rng: RandomStream) -> Population:
    """Uniform initial population in ``[lower, upper)``, fitness left stale.

    Consumes ``n * d`` draws, agent-major.
    """
    if n < MIN_POPULATION:
        raise ConfigurationError(
            f"population size must be at least {MIN_POPULATION} (three leaders and one omega), got {n}"
        )
    lo, hi = problem.bounds.lower, problem.bounds.upper
    u = rng.uniform01((n, problem.dimension))
    x = lo + u * (hi - lo)
    # rounding can land exactly on the upper limit
    x = np.where(x >= hi, np.nextafter(hi, lo), x)
    return Population(x)
