"""Lloyd's K-means on small point sets (agent positions).

Minimizes the within-cluster sum of squared Euclidean distances. Initial
centroids are ``k`` distinct points picked without replacement; a cluster
that empties out is reseeded with the point lying farthest from its own
centroid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .core import ConfigurationError, InputError, RandomStream

DEFAULT_MAX_ITERATIONS = 100


@dataclass
class Clustering:
    centroids: np.ndarray
    assignments: np.ndarray
    objective_j: float
    iterations_used: int
    history: List[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.centroids.shape[0]

    def members(self, j: int) -> np.ndarray:
        """Indices of the points assigned to cluster ``j``."""
        return np.flatnonzero(self.assignments == j)


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2:
        raise InputError("points must be a list of vectors")
    return pts


def _sq_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum("nkd,nkd->nk", diff, diff)


def objective_j(points, centroids, assignments) -> float:
    """Sum of squared distances from each point to its assigned centroid."""
    pts = _as_points(points)
    cen = _as_points(centroids)
    labels = np.asarray(assignments)
    if pts.shape[1] != cen.shape[1]:
        raise InputError(f"points have dimension {pts.shape[1]}, centroids {cen.shape[1]}")
    if labels.shape != (pts.shape[0],):
        raise InputError("one label per point is required")
    if labels.size and (labels.min() < 0 or labels.max() >= cen.shape[0]):
        raise InputError(f"labels must lie in [0, {cen.shape[0]})")
    diff = pts - cen[labels]
    return float(np.sum(diff * diff))


def assign(points, centroids) -> np.ndarray:
    """Nearest-centroid labels; ties go to the lower index."""
    pts = _as_points(points)
    cen = _as_points(centroids)
    if cen.shape[0] < 1:
        raise ConfigurationError("at least one centroid is required")
    return np.argmin(_sq_distances(pts, cen), axis=1)


def _recompute(points: np.ndarray, labels: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray]:
    labels = labels.copy()
    centroids = np.zeros((k, points.shape[1]))
    counts = np.bincount(labels, minlength=k)
    for j in range(k):
        if counts[j]:
            centroids[j] = points[labels == j].mean(axis=0)
    for j in np.flatnonzero(counts == 0):
        # only points whose cluster keeps at least one other member may move
        diff = points - centroids[labels]
        dist = np.einsum("nd,nd->n", diff, diff)
        dist[counts[labels] <= 1] = -1.0
        far = int(np.argmax(dist))
        counts[labels[far]] -= 1
        labels[far] = j
        counts[j] = 1
        centroids[j] = points[far]
    return centroids, labels


def recompute_centroids(points, labels, k: int) -> np.ndarray:
    """Per-cluster means, reseeding empty clusters from the farthest point."""
    pts = _as_points(points)
    labels = np.asarray(labels, dtype=int)
    if labels.size and (labels.min() < 0 or labels.max() >= k):
        raise InputError(f"labels must lie in [0, {k})")
    if pts.shape[0] < k:
        raise ConfigurationError(f"cannot form {k} clusters from {pts.shape[0]} points")
    return _recompute(pts, labels, k)[0]


def forgy_indices(n: int, k: int, rng: RandomStream) -> np.ndarray:
    """``k`` distinct indices from ``range(n)`` using exactly ``k`` draws."""
    idx = np.arange(n)
    for j in range(k):
        r = j + min(int(rng.uniform01() * (n - j)), n - j - 1)
        idx[j], idx[r] = idx[r], idx[j]
    return idx[:k].copy()


def lloyd(points, k: int, rng: RandomStream, max_iterations: int = DEFAULT_MAX_ITERATIONS) -> Clustering:
    """Alternate assignment and mean updates until the labels stop changing.

    Consumes exactly ``k`` uniform draws from ``rng`` (for the initial
    centroids).
    """
    pts = _as_points(points)
    n = pts.shape[0]
    if k < 1:
        raise ConfigurationError(f"k must be positive, got {k}")
    if n < k:
        raise ConfigurationError(f"cannot form {k} clusters from {n} points")
    if max_iterations < 1:
        raise ConfigurationError("max_iterations must be positive")

    centroids = pts[forgy_indices(n, k, rng)].copy()
    labels = None
    history: List[float] = []
    it = 0
    for it in range(1, max_iterations + 1):
        new_labels = assign(pts, centroids)
        centroids, new_labels = _recompute(pts, new_labels, k)
        history.append(objective_j(pts, centroids, new_labels))
        if labels is not None and np.array_equal(new_labels, labels):
            labels = new_labels
            break
        labels = new_labels
    return Clustering(
        centroids=centroids,
        assignments=labels,
        objective_j=history[-1],
        iterations_used=it,
        history=history,
    )
