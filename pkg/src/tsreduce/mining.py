"""1NN classification and k-means clustering, the two fitness tasks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dataset import DatasetPair, LabeledDataset, TimeSeries
from .distance import euclidean, pairwise_euclidean
from .errors import ContractError, InvariantError

DistanceFn = Callable[[np.ndarray, np.ndarray], float]

MAX_KMEANS_ITER = 300


def nn1_classify(train: LabeledDataset, query, dist: DistanceFn = euclidean) -> int:
    """Label of the nearest training series; ties go to the lowest training index."""
    if train is None or len(train) == 0:
        raise ContractError("1NN needs a non-empty training set")
    q = query.values if isinstance(query, TimeSeries) else np.asarray(query, dtype=float)
    best, best_i = np.inf, -1
    for i, row in enumerate(train.X):
        d = dist(row, q)
        if d < best:
            best, best_i = d, i
    return int(train.labels[best_i])


def nn1_predict_from_distances(D: np.ndarray, train_labels: np.ndarray) -> np.ndarray:
    # np.argmin returns the first minimum, which is the tie rule we want
    return np.asarray(train_labels)[np.argmin(D, axis=1)]


def loocv_error_from_distances(D: np.ndarray, labels: np.ndarray) -> float:
    D = np.array(D, dtype=float)
    np.fill_diagonal(D, np.inf)
    predicted = nn1_predict_from_distances(D, labels)
    return int(np.count_nonzero(predicted != labels)) / len(labels)


def loocv_error(ds: LabeledDataset, dist: Optional[DistanceFn] = None) -> float:
    """Leave-one-out 1NN error: misclassified count over total count.

    With the default Euclidean distance a vectorized distance matrix is used;
    any other ``dist`` is evaluated pair by pair.
    """
    m = len(ds)
    if m < 2:
        raise ContractError("leave-one-out needs at least 2 series")
    if dist is None or dist is euclidean:
        return loocv_error_from_distances(pairwise_euclidean(ds.X), ds.labels)
    wrong = 0
    for i in range(m):
        best, best_j = np.inf, -1
        for j in range(m):
            if j == i:
                continue
            d = dist(ds.X[j], ds.X[i])
            if d < best:
                best, best_j = d, j
        wrong += int(ds.labels[best_j] != ds.labels[i])
    return wrong / m


def holdout_error(pair: DatasetPair, dist: Optional[DistanceFn] = None) -> float:
    if len(pair.test) == 0:
        raise ContractError("hold-out evaluation needs a non-empty test set")
    if dist is None or dist is euclidean:
        predicted = nn1_predict_from_distances(
            pairwise_euclidean(pair.test.X, pair.train.X), pair.train.labels
        )
    else:
        predicted = np.array([nn1_classify(pair.train, row, dist) for row in pair.test.X])
    return int(np.count_nonzero(predicted != pair.test.labels)) / len(pair.test)


@dataclass(frozen=True, eq=False)
class ClusteringResult:
    """Outcome of one k-means run.

    ``error`` sums plain Euclidean distances of points to their centroids;
    ``sse`` sums squared distances, the objective Lloyd iterations decrease.
    """

    assignments: np.ndarray
    centroids: np.ndarray
    iterations: int
    error: float
    sse: float
    sse_history: tuple

    @property
    def k(self) -> int:
        return self.centroids.shape[0]


def clustering_error(X: np.ndarray, assignments: np.ndarray, centroids: np.ndarray) -> float:
    d = X - centroids[assignments]
    return float(np.sum(np.sqrt(np.einsum("ij,ij->i", d, d))))


def _sse(X, assignments, centroids) -> float:
    d = X - centroids[assignments]
    return float(np.einsum("ij,ij->", d, d))


def kmeans(data, k: int, seed=None, max_iter: int = MAX_KMEANS_ITER) -> ClusteringResult:
    """Lloyd's k-means from ``k`` distinct series drawn uniformly as initial centroids."""
    X = data.X if isinstance(data, LabeledDataset) else np.asarray(data, dtype=float)
    m = X.shape[0]
    if not 1 <= k <= m:
        raise ContractError(f"k must be in [1, {m}], got {k}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    centroids = X[np.sort(rng.choice(m, size=k, replace=False))].copy()
    assignments = np.full(m, -1)
    history = []
    iterations = 0
    for iterations in range(1, max_iter + 1):
        new = np.argmin(pairwise_euclidean(X, centroids), axis=1)
        if history:
            # reassignment alone must not increase the objective
            if _sse(X, new, centroids) > history[-1] * (1 + 1e-12) + 1e-12:
                raise InvariantError("k-means assignment step increased the objective")
        if np.array_equal(new, assignments):
            break
        assignments = new
        for j in range(k):
            members = assignments == j
            if members.any():
                centroids[j] = X[members].mean(axis=0)
        for j in range(k):
            if not np.any(assignments == j):
                d = X - centroids[assignments]
                far = int(np.argmax(np.einsum("ij,ij->i", d, d)))
                old = assignments[far]
                assignments[far] = j
                centroids[j] = X[far]
                rest = assignments == old
                if rest.any():
                    centroids[old] = X[rest].mean(axis=0)
        sse = _sse(X, assignments, centroids)
        if history and sse > history[-1] * (1 + 1e-12) + 1e-12:
            raise InvariantError("k-means objective increased between iterations")
        history.append(sse)
    return ClusteringResult(
        assignments=assignments,
        centroids=centroids,
        iterations=iterations,
        error=clustering_error(X, assignments, centroids),
        sse=_sse(X, assignments, centroids),
        sse_history=tuple(history),
    )


def purity(assignments, labels) -> float:
    """Fraction of points carrying the majority label of their cluster."""
    a, y = np.asarray(assignments), np.asarray(labels)
    if a.shape != y.shape:
        raise ContractError("assignments and labels must have equal length")
    if a.size == 0:
        raise ContractError("cannot score an empty clustering")
    total = 0
    for cluster in np.unique(a):
        _, counts = np.unique(y[a == cluster], return_counts=True)
        total += int(counts.max())
    return total / a.size


def rand_index(assignments, labels) -> float:
    a, y = np.asarray(assignments), np.asarray(labels)
    if a.shape != y.shape:
        raise ContractError("assignments and labels must have equal length")
    m = a.size
    if m < 2:
        return 1.0
    same_a = a[:, None] == a[None, :]
    same_y = y[:, None] == y[None, :]
    agree = np.count_nonzero(same_a == same_y) - m
    return agree / (m * (m - 1))


QUALITY_METRICS = {"purity": purity, "rand": rand_index}


def clustering_quality(assignments, labels, metric: str = "purity") -> float:
    try:
        fn = QUALITY_METRICS[metric]
    except KeyError:
        raise ContractError(f"unknown clustering quality metric {metric!r}") from None
    return fn(assignments, labels)


def kmeans_quality(ds: LabeledDataset, seed=None, metric: str = "purity") -> float:
    """Cluster with k set to the number of classes, then score against the labels."""
    result = kmeans(ds.X, min(len(ds.classes), len(ds)), seed)
    return clustering_quality(result.assignments, ds.labels, metric)
