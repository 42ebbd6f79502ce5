"""Acceptance criteria, one test each, at the stated tolerances.

Every test appends ``criterion N: PASS|FAIL <details>`` to the session
summary before asserting, so a failing criterion still reports its numbers.
Run standalone with ``python tests/test_acceptance.py``.
"""

import sys
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from test_kmeans import brute_force_two_partition, partition_of
from test_stats import rank_sum_oracle

from kmgwo import GwoParams, KmgwoParams, RandomStream, gwo_run, kmgwo_run, lloyd, update_a
from kmgwo.gwo import coefficients_from_draws
from kmgwo.harness.stats import wilcoxon_rank_sum
from kmgwo.harness.tables import reproduce_tables
from kmgwo.hybrid import FORCE_FULL
from kmgwo.problems import cec2019_function, pressure_vessel, pv_constraints, sphere

pytestmark = pytest.mark.slow


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


class SkipAfterInit(RandomStream):
    """GWO stream that discards ``skip`` draws right after the first ``init`` draws."""

    def __init__(self, seed, init, skip):
        super().__init__(seed)
        self._init, self._skip = init, skip

    def uniform01(self, size=None):
        out = super().uniform01(size)
        if self._skip and self.draws == self._init:
            skip, self._skip = self._skip, 0
            self.skip(skip)
        return out


@pytest.fixture(scope="session")
def protocol(tmp_path_factory):
    """Full protocol: 30 agents, 500 iterations, 30 CEC runs, 15 vessel runs, base seed 0."""
    out = tmp_path_factory.mktemp("protocol")
    return reproduce_tables(agents=30, iters=500, reps=30, vessel_reps=15, seed=0, out=str(out))


@pytest.fixture(scope="session")
def reduction_records():
    pairs = []
    for problem in (sphere(), pressure_vessel()):
        for seed in range(100):
            gp = GwoParams(population_size=30, max_iterations=500, seed=seed)
            km, trace = kmgwo_run(problem, KmgwoParams(gwo=gp, gate_override=FORCE_FULL))
            rng = SkipAfterInit(seed, problem.dimension * gp.population_size, 3)
            pairs.append((problem.name, seed, km, gwo_run(problem, gp, rng=rng)))
    return pairs


def test_criterion_1_gwo_f3_mean(protocol):
    s = protocol.cec["cec19:f3"]["gwo"]
    seconds = sum(r.record.wall_time for r in s.runs)
    ok = 12.0 <= s.avg <= 14.5 and seconds < 120
    report(1, ok, f"GWO F3 mean {s.avg:.6g} (band [12.0, 14.5]), {s.repetitions} runs in {seconds:.1f}s")
    assert ok


def test_criterion_2_gwo_f2_mean(protocol):
    s = protocol.cec["cec19:f2"]["gwo"]
    ok = 17.0 <= s.avg <= 19.5
    report(2, ok, f"GWO F2 mean {s.avg:.6g} (band [17.0, 19.5]), {s.repetitions} runs")
    assert ok


def test_criterion_3_vessel(protocol):
    s = protocol.vessel["kmgwo"]
    best = s.best_run.record.final_best.position
    rep = pv_constraints(best)
    seconds = sum(r.record.wall_time for r in s.runs)
    ok = s.best <= 6500 and rep.feasible and s.avg <= 7500 and seconds < 60
    report(
        3,
        ok,
        f"KMGWO vessel best {s.best:.6f} (<= 6500), feasible={rep.feasible} "
        f"(max g = {rep.g.max():.3g}), mean {s.avg:.6f} (<= 7500), {seconds:.1f}s",
    )
    assert ok


def test_criterion_4_reduction(reduction_records):
    mismatched = [(name, seed) for name, seed, km, g in reduction_records if km != g]
    ok = not mismatched
    report(4, ok, f"{len(reduction_records) - len(mismatched)}/{len(reduction_records)} gate-off KMGWO runs identical to GWO")
    assert ok


def test_criterion_5_monotone(protocol, reduction_records):
    records = [r.record for pair in protocol.cec.values() for s in pair.values() for r in s.runs]
    records += [r.record for s in protocol.vessel.values() for r in s.runs]
    records += [rec for _, _, km, g in reduction_records for rec in (km, g)]
    bad = 0
    for rec in records:
        b = rec.best_per_iteration
        bad += not bool(np.all(b[1:] <= b[:-1]))
    ok = bad == 0
    report(5, ok, f"{len(records) - bad}/{len(records)} runs have nonincreasing best_per_iteration")
    assert ok


def test_criterion_6_kmeans_oracle():
    rng = np.random.default_rng(2024)
    exact = monotone = 0
    instances = 200
    for trial in range(instances):
        n = int(rng.integers(2, 11))
        dim = int(rng.integers(1, 3))
        n_a = int(rng.integers(1, n))
        pts = np.vstack([rng.uniform(0, 1, (n_a, dim)), 10.0 + rng.uniform(0, 1, (n - n_a, dim))])
        star, sets = brute_force_two_partition(pts)
        cl = lloyd(pts, 2, RandomStream(trial))
        exact += partition_of(cl.assignments) == sets and abs(cl.objective_j - star) <= 1e-12 * max(1.0, star)
        monotone += all(b <= a for a, b in zip(cl.history, cl.history[1:]))
    ok = exact == instances and monotone == instances
    report(6, ok, f"global minimum on {exact}/{instances}, monotone J on {monotone}/{instances}")
    assert ok


def test_criterion_7_coefficients():
    failures = []
    for k, a in enumerate((2.0, 1.0, 0.5, update_a(499, 500))):
        draws = RandomStream(k).uniform01((10**6, 2))
        A, C = coefficients_from_draws(a, draws[:, 0], draws[:, 1])
        if not (A.min() >= -a and A.max() < a and C.min() >= 0.0 and C.max() < 2.0):
            failures.append(a)
    schedule_ok = all(update_a(i, 500) == float(2 * (1 - Fraction(i, 500))) for i in range(501))
    ok = not failures and schedule_ok
    report(7, ok, f"A/C ranges hold for {4 - len(failures)}/4 settings x 1e6 samples, exact schedule at 501 points: {schedule_ok}")
    assert ok


def test_criterion_8_wilcoxon():
    rng = np.random.default_rng(8)
    compared = mismatched = 0
    for na in range(1, 10):
        for nb in range(1, 11 - na):
            for kind in range(4):
                if kind % 2:
                    a, b = rng.integers(0, 4, na).astype(float), rng.integers(0, 4, nb).astype(float)
                else:
                    a, b = rng.normal(size=na), rng.normal(size=nb)
                compared += 1
                mismatched += wilcoxon_rank_sum(a, b) != float(rank_sum_oracle(a, b))
    trials = 10_000
    cal = np.random.default_rng(88)
    rejections = sum(wilcoxon_rank_sum(cal.random(30), cal.random(30)) < 0.05 for _ in range(trials))
    rate = rejections / trials
    ok = mismatched == 0 and abs(rate - 0.05) <= 0.01
    report(8, ok, f"exact p matches oracle on {compared - mismatched}/{compared} samples (n_a + n_b <= 10); "
                  f"false-positive rate {rate:.4f} over {trials} null trials")
    assert ok


def test_criterion_9_cec_sanity():
    rng = np.random.default_rng(9)
    below = {}
    for fid in range(1, 11):
        f = cec2019_function(fid)
        lo = np.inf
        for _ in range(10):
            X = rng.uniform(f.bounds.lower, f.bounds.upper, (10_000, f.dimension))
            lo = min(lo, float(f.evaluate_many(X).min()))
        if lo < 1.0:
            below[fid] = lo
    optima = {fid: abs(cec2019_function(fid).evaluate(cec2019_function(fid).shift_vector) - 1.0) for fid in range(4, 11)}
    worst = max(optima.values())
    ok = not below and worst <= 1e-9
    report(9, ok, f"no value below 1 in 1e5 points x 10 functions ({len(below)} violations); "
                  f"F4-F10 at shift: max |f - 1| = {worst:.3g}")
    assert ok


def test_criterion_10_direction(protocol):
    count = protocol.direction_count
    ok = count >= 5
    report(10, ok, f"KMGWO mean <= GWO mean + pooled SE on {count}/10 functions (need >= 5); "
                   f"pooled signed-rank p {protocol.pooled_p:.3g}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
