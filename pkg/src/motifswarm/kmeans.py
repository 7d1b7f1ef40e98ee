"""Lloyd-style k-means under the city-block distance.

Works on frequency windows or plain vectors. Because mean-updated centroids
are not guaranteed to lower an L1 objective monotonically, every iteration's
(assignment, centroids) pair is scored and the best-seen pair is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError
from . import metrics


@dataclass
class ClusterSet:
    """Result of one clustering run.

    centroids has shape (k, *item_shape); assignment maps item index to
    cluster index; trace holds the fitness of each iteration's snapshot.
    """

    k: int
    centroids: np.ndarray
    assignment: np.ndarray
    iterations_run: int
    final_fitness: float
    converged: bool
    trace: list[float] = field(default_factory=list)

    def members(self, cluster: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == cluster)


def as_item_arrays(data) -> np.ndarray:
    """Stack items (arrays or frequency windows) into an (n, ...) float array."""
    items = [np.asarray(getattr(x, "counts", x), dtype=float) for x in data]
    if not items:
        raise ContractError("empty dataset")
    shape = items[0].shape
    if any(it.shape != shape for it in items):
        raise ContractError("items must share one shape")
    return np.stack(items)


def _pairwise_l1(flat: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return np.abs(flat[:, None, :] - centroids[None, :, :]).sum(axis=2)


def _distance_matrix(flat, centroids, dist):
    if dist is metrics.cityblock:
        return _pairwise_l1(flat, centroids)
    out = np.empty((flat.shape[0], centroids.shape[0]))
    for i in range(flat.shape[0]):
        for c in range(centroids.shape[0]):
            out[i, c] = dist(flat[i], centroids[c])
    return out


def _seed_weighted(flat: np.ndarray, k: int, rng, dist) -> np.ndarray:
    """Pick k distinct items as centroids, weighting each pick by squared
    distance to the nearest already-chosen one (k-means++ scheme)."""
    n = flat.shape[0]
    chosen = [int(rng.integers(n))]
    while len(chosen) < k:
        d = _distance_matrix(flat, flat[chosen], dist).min(axis=1)
        weights = d**2
        weights[chosen] = 0.0
        total = weights.sum()
        if total <= 0.0:
            remaining = [i for i in range(n) if i not in chosen]
            chosen.append(int(rng.choice(remaining)))
        else:
            chosen.append(int(rng.choice(n, p=weights / total)))
    return flat[chosen].copy()


def _seed_balanced(flat: np.ndarray, k: int, rng) -> np.ndarray:
    """Random near-equal-size initial assignment; centroids are group means."""
    labels = np.array([i % k for i in range(flat.shape[0])])
    rng.shuffle(labels)
    return np.stack([flat[labels == c].mean(axis=0) for c in range(k)])


def kmeans_run(
    data,
    k: int,
    dist=metrics.cityblock,
    max_iter: int = 100,
    seed: int = 0,
    init: str = "kmeans++",
    update: str = "mean",
) -> ClusterSet:
    """Cluster items into k groups; deterministic for a given seed.

    init: "kmeans++" (distance-weighted item sampling, default), "uniform"
    (unweighted item sampling) or "balanced" (random equal-size assignment).
    update: "mean" or "median" centroid recomputation. Stops when an
    iteration changes no assignment, or after max_iter iterations.
    """
    items = as_item_arrays(data)
    n = items.shape[0]
    item_shape = items.shape[1:]
    if not 1 <= k <= n:
        raise ContractError(f"k={k} must be in [1, {n}]")
    if max_iter < 1:
        raise ContractError("max_iter must be >= 1")
    rng = np.random.default_rng(seed)
    flat = items.reshape(n, -1)

    if init == "kmeans++":
        centroids = _seed_weighted(flat, k, rng, dist)
    elif init == "uniform":
        centroids = flat[rng.choice(n, size=k, replace=False)].copy()
    elif init == "balanced":
        centroids = _seed_balanced(flat, k, rng)
    else:
        raise ContractError(f"unknown init scheme {init!r}")
    if update not in ("mean", "median"):
        raise ContractError(f"unknown update rule {update!r}")

    best_fitness = np.inf
    best_labels = None
    best_centroids = None
    trace: list[float] = []
    prev_labels = None
    converged = False
    iterations = 0

    for iterations in range(1, max_iter + 1):
        distances = _distance_matrix(flat, centroids, dist)
        labels = distances.argmin(axis=1)  # ties resolve to lowest index
        fitness = metrics.intra_cluster_fitness(flat, labels, centroids, dist)
        trace.append(fitness)
        if fitness < best_fitness:
            best_fitness = fitness
            best_labels = labels.copy()
            best_centroids = centroids.copy()
        if prev_labels is not None and np.array_equal(labels, prev_labels):
            converged = True
            break
        prev_labels = labels

        new_centroids = centroids.copy()
        for c in range(k):
            members = flat[labels == c]
            if members.shape[0] == 0:
                # Reseed a dead cluster on the item farthest from it.
                far = _distance_matrix(flat, centroids[c : c + 1], dist)[:, 0]
                new_centroids[c] = flat[int(far.argmax())]
            elif update == "mean":
                new_centroids[c] = members.mean(axis=0)
            else:
                new_centroids[c] = np.median(members, axis=0)
        centroids = new_centroids

    return ClusterSet(
        k=k,
        centroids=best_centroids.reshape((k,) + item_shape),
        assignment=best_labels,
        iterations_run=iterations,
        final_fitness=best_fitness,
        converged=converged,
        trace=trace,
    )
