import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from kmgwo import (
    Bounds,
    ConfigurationError,
    InputError,
    Leaders,
    Population,
    Problem,
    RandomStream,
    SearchAgent,
    clamp,
    random_population,
)
from kmgwo.problems import pressure_vessel, sphere


# ------------------------------------------------------------------ Bounds


def test_bounds_validation():
    with pytest.raises(ConfigurationError):
        Bounds([], [])
    with pytest.raises(ConfigurationError):
        Bounds([0.0, 1.0], [1.0])
    with pytest.raises(ConfigurationError):
        Bounds([0.0, 2.0], [1.0, 2.0])  # lower == upper in dimension 1


def test_bounds_are_read_only():
    b = Bounds([0.0], [1.0])
    with pytest.raises(ValueError):
        b.lower[0] = 5.0


# ------------------------------------------------------------------- clamp


def test_clamp_upper_saturation():
    assert clamp([3.0], Bounds([0.0], [2.0])).tolist() == [2.0]


def test_clamp_identity_inside():
    assert clamp([1.0], Bounds([0.0], [2.0])).tolist() == [1.0]


def test_clamp_both_ends():
    b = Bounds([0.0, 10.0], [99.0, 200.0])
    assert clamp([-5.0, 250.0], b).tolist() == [0.0, 200.0]


def test_clamp_dimension_mismatch():
    with pytest.raises(InputError):
        clamp([1.0, 2.0], Bounds([0.0], [1.0]))


finite = st.floats(-1e6, 1e6, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(arrays(float, 5, elements=finite), arrays(float, 5, elements=st.floats(-100, 100)))
def test_clamp_idempotent_and_in_range(x, lo):
    b = Bounds(lo, lo + 1.5)
    once = clamp(x, b)
    assert np.array_equal(clamp(once, b), once)
    assert np.all(once >= b.lower) and np.all(once <= b.upper)
    inside = (x >= b.lower) & (x <= b.upper)
    assert np.array_equal(once[inside], x[inside])


# ------------------------------------------------------------ RandomStream


def test_stream_determinism_and_range():
    a, b = RandomStream(42), RandomStream(42)
    x, y = a.uniform01(10_000), b.uniform01(10_000)
    assert np.array_equal(x, y)
    assert x.min() >= 0.0 and x.max() < 1.0
    assert a.draws == 10_000


def test_stream_block_equals_scalars():
    a, b = RandomStream(7), RandomStream(7)
    block = a.uniform01((4, 3, 6)).ravel()
    scalars = np.array([b.uniform01() for _ in range(72)])
    assert np.array_equal(block, scalars)


def test_stream_skip():
    a, b = RandomStream(9), RandomStream(9)
    a.skip(5)
    b.uniform01(5)
    assert a.uniform01() == b.uniform01()
    with pytest.raises(ConfigurationError):
        a.skip(-1)


def test_stream_seed_range():
    RandomStream(2**64 - 1)
    with pytest.raises(ConfigurationError):
        RandomStream(2**64)
    with pytest.raises(ConfigurationError):
        RandomStream(-1)


# -------------------------------------------------------------- agents


def test_agent_position_invalidates_fitness():
    ag = SearchAgent([1.0, 2.0], 3.0)
    assert ag.valid and ag.fitness == 3.0
    ag.position = [0.0, 0.0]
    assert not ag.valid


def test_leaders_sentinel_and_order():
    lead = Leaders.sentinel(2)
    assert lead.fitness == (np.inf, np.inf, np.inf)
    assert lead.positions().shape == (3, 2)
    assert lead.is_ordered()


# ---------------------------------------------------------- population


def test_random_population_determinism():
    p = sphere()
    a = random_population(30, p, RandomStream(5))
    b = random_population(30, p, RandomStream(5))
    assert np.array_equal(a.positions, b.positions)
    assert not a.valid


def test_random_population_range():
    p = Problem("box", Bounds.uniform(0.0, 2.0, 4), lambda x: 0.0)
    pop = random_population(30, p, RandomStream(1))
    assert pop.positions.min() >= 0.0 and pop.positions.max() < 2.0


def test_random_population_uses_n_times_d_draws():
    rng = RandomStream(3)
    random_population(11, pressure_vessel(), rng)
    assert rng.draws == 44


def test_random_population_too_small():
    with pytest.raises(ConfigurationError):
        random_population(3, sphere(), RandomStream(0))


def test_random_population_never_hits_upper():
    # a uniform draw of 1 - 2**-53 maps onto the upper limit for this box
    p = Problem("tight", Bounds([1e16], [1e16 + 2]), lambda x: 0.0)
    pop = random_population(500, p, RandomStream(0))
    assert pop.positions.max() < 1e16 + 2


def test_population_evaluate_and_subset():
    p = sphere()
    pop = random_population(6, p, RandomStream(0))
    assert pop.evaluate(p) == 6
    sub = pop.subset([1, 3])
    assert np.array_equal(sub.positions, pop.positions[[1, 3]])
    assert np.array_equal(sub.fitness, pop.fitness[[1, 3]])
    agent = pop[2]
    assert agent.fitness == pytest.approx(float(np.sum(pop.positions[2] ** 2)))


def test_problem_rejects_wrong_shape():
    with pytest.raises(InputError):
        sphere().evaluate(np.zeros(3))
    with pytest.raises(InputError):
        sphere().evaluate_many(np.zeros((2, 3)))
