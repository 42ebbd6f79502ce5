"""Pure numpy versions of the hot kernels.

The compiled twins in ``_ckernels.pyx`` must keep the same signatures. The
sweep kernel is elementwise and produces bit-identical output on both
backends; the objective kernels agree to rounding.
"""

import numpy as np


def gwo_sweep(positions, leaders, a, draws, lower, upper):
    """Move every agent toward the three leaders and clamp into bounds.

    Parameters
    ----------
    positions : (n, d) array
    leaders : (3, d) array
        Alpha, beta and delta positions.
    a : float
        Current value of the linearly decreasing control parameter.
    draws : (n, d, 6) array of uniform draws
        Last axis holds ``r1, r2`` for alpha, then beta, then delta.
    lower, upper : (d,) arrays
    """
    x = positions[:, :, None]
    lead = leaders.T[None, :, :]
    r1 = draws[:, :, 0::2]
    r2 = draws[:, :, 1::2]
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    dist = np.abs(C * lead - x)
    moved = lead - A * dist
    new = (moved[:, :, 0] + moved[:, :, 1] + moved[:, :, 2]) / 3.0
    return np.minimum(upper, np.maximum(lower, new))


def lennard_jones(X):
    """Pairwise Lennard-Jones energy of ``d // 3`` atoms for each row of ``X``."""
    X = np.asarray(X, dtype=float)
    n, d = X.shape
    k = d // 3
    atoms = X[:, : 3 * k].reshape(n, k, 3)
    i, j = np.triu_indices(k, 1)
    diff = atoms[:, i, :] - atoms[:, j, :]
    ed = np.sum(diff * diff, axis=2)
    ud = ed * ed * ed
    close = ud <= 1.0e-10
    safe = np.where(close, 1.0, ud)
    term = np.where(close, 1.0e20, (1.0 / safe - 2.0) / safe)
    return term.sum(axis=1)


def chebyshev(X):
    """Storn's Chebyshev polynomial fitting penalty for each row of ``X``.

    Row entries are polynomial coefficients, highest degree first.
    """
    X = np.asarray(X, dtype=float)
    n, d = X.shape
    a, b = 1.0, 1.2
    dx = b
    for _ in range(d - 2):
        dx = 2.4 * b - a
        a, b = b, dx
    sample = 32 * d
    dy = 2.0 / sample
    y = -1.0 + dy * np.arange(sample + 1)

    px = np.repeat(X[:, :1], sample + 1, axis=1)
    for j in range(1, d):
        px = y * px + X[:, j : j + 1]
    outside = (px < -1.0) | (px > 1.0)
    dev = 1.0 - np.abs(px)
    total = np.sum(np.where(outside, dev * dev, 0.0), axis=1)

    # the reference evaluates the y = 1.2 end condition twice
    p12 = X[:, 0].copy()
    for j in range(1, d):
        p12 = 1.2 * p12 + X[:, j]
    total += 2.0 * np.where(p12 < dx, p12 * p12, 0.0)
    return total
