"""Nonparametric two-sample tests for comparing optimizer runs.

Both tests report two-sided p-values as ``min(1, 2 * smaller tail)``.
Ranks are midranks; internally they are doubled so every rank sum is an
integer and the exact null distributions can be counted without rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from ..core import InputError

EXACT_RANK_SUM_LIMIT = 12
EXACT_SIGNED_RANK_LIMIT = 20


def doubled_midranks(values) -> Tuple[np.ndarray, np.ndarray]:
    """Twice the midrank of each value, and the sizes of the tie groups."""
    v = np.asarray(values, dtype=float)
    order = np.argsort(v, kind="mergesort")
    sv = v[order]
    ranks = np.empty(v.size, dtype=np.int64)
    ties = []
    i = 0
    while i < sv.size:
        j = i
        while j + 1 < sv.size and sv[j + 1] == sv[i]:
            j += 1
        # positions i..j hold ranks i+1..j+1; twice their mean is i+j+2
        ranks[order[i : j + 1]] = i + j + 2
        ties.append(j - i + 1)
        i = j + 1
    return ranks, np.array(ties, dtype=np.int64)


def _subset_sum_counts(weights: Sequence[int], size: int) -> dict:
    """Number of ``size``-subsets of ``weights`` per subset sum."""
    table = [dict() for _ in range(size + 1)]
    table[0][0] = 1
    for w in weights:
        for j in range(min(size, len(weights)), 0, -1):
            prev = table[j - 1]
            cur = table[j]
            for s, c in prev.items():
                cur[s + w] = cur.get(s + w, 0) + c
    return table[size]


def _two_sided(lower: int, upper: int, total: int) -> float:
    return float(Fraction(min(2 * min(lower, upper), total), total))


def _check_samples(a, b):
    a = np.asarray(a, dtype=float).reshape(-1)
    b = np.asarray(b, dtype=float).reshape(-1)
    if a.size == 0 or b.size == 0:
        raise InputError("both samples must be nonempty")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InputError("samples must be finite")
    return a, b


def rank_sum_exact(a, b) -> float:
    """Exact rank-sum p-value by counting all ``C(N, n_a)`` rank assignments."""
    a, b = _check_samples(a, b)
    ranks, _ = doubled_midranks(np.concatenate([a, b]))
    observed = int(ranks[: a.size].sum())
    counts = _subset_sum_counts(ranks.tolist(), a.size)
    total = sum(counts.values())
    lower = sum(c for s, c in counts.items() if s <= observed)
    upper = sum(c for s, c in counts.items() if s >= observed)
    return _two_sided(lower, upper, total)


def rank_sum_normal(a, b) -> float:
    """Normal approximation with tie-corrected variance and continuity correction."""
    a, b = _check_samples(a, b)
    na, nb = a.size, b.size
    n = na + nb
    ranks, ties = doubled_midranks(np.concatenate([a, b]))
    w = ranks[:na].sum() / 2.0
    mean = na * (n + 1) / 2.0
    tie_term = float(np.sum(ties**3 - ties)) / (n * (n - 1)) if n > 1 else 0.0
    var = na * nb / 12.0 * ((n + 1) - tie_term)
    if var <= 0.0:
        return 1.0
    z = max(0.0, abs(w - mean) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))


def wilcoxon_rank_sum(sample_a, sample_b) -> float:
    """Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value.

    Exact when the pooled size is at most 12, otherwise the normal
    approximation. Identical constant samples give ``p = 1``.
    """
    a, b = _check_samples(sample_a, sample_b)
    if a.size + b.size <= EXACT_RANK_SUM_LIMIT:
        return rank_sum_exact(a, b)
    return rank_sum_normal(a, b)


def wilcoxon_signed_rank(x, y) -> float:
    """Two-sided Wilcoxon signed-rank p-value for paired samples.

    Zero differences are dropped. Exact up to 20 nonzero pairs, normal
    approximation (tie-corrected, continuity-corrected) beyond. Returns 1
    when every difference is zero.
    """
    x, y = _check_samples(x, y)
    if x.size != y.size:
        raise InputError("paired samples must have equal length")
    d = x - y
    d = d[d != 0.0]
    n = d.size
    if n == 0:
        return 1.0
    ranks, ties = doubled_midranks(np.abs(d))
    observed = int(ranks[d > 0].sum())
    if n <= EXACT_SIGNED_RANK_LIMIT:
        # every sign pattern is equally likely under the null
        dist = {0: 1}
        for r in ranks.tolist():
            nxt = dict(dist)
            for s, c in dist.items():
                nxt[s + r] = nxt.get(s + r, 0) + c
            dist = nxt
        total = 1 << n
        lower = sum(c for s, c in dist.items() if s <= observed)
        upper = sum(c for s, c in dist.items() if s >= observed)
        return _two_sided(lower, upper, total)
    t = observed / 2.0
    mean = n * (n + 1) / 4.0
    var = n * (n + 1) * (2 * n + 1) / 24.0 - float(np.sum(ties**3 - ties)) / 48.0
    if var <= 0.0:
        return 1.0
    z = max(0.0, abs(t - mean) - 0.5) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))
