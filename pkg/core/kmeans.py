"""
K-means clustering
Lloyd iterations with k-means++ seeding over the full input space
"""

from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np
from scipy.spatial.distance import cdist

from config import settings
from utils import get_logger, make_rng

logger = get_logger(__name__)


class ClusteringError(ValueError):
    """Invalid clustering request (bad k, dimension mismatch)"""
    pass


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """
    Fitted k-means model

    Attributes:
        centroids: (k, m) matrix
        assignment: cluster index of every training row, in [0, k)
        iterations: Lloyd iterations performed
        inertia: sum of squared distances to the assigned centroid
        inertia_history: inertia after seeding and after every iteration
    """
    centroids: np.ndarray
    assignment: np.ndarray
    iterations: int
    inertia: float
    inertia_history: Tuple[float, ...] = field(default=())

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    def cluster_members(self, cluster_id: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == cluster_id)


def _squared_distances(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return cdist(X, centroids, metric='sqeuclidean')


def _assign(X: np.ndarray, centroids: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # argmin returns the first minimum: ties -> lowest centroid index
    sq = _squared_distances(X, centroids)
    labels = np.argmin(sq, axis=1)
    return labels, sq[np.arange(X.shape[0]), labels]


def _kmeans_plusplus(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = X.shape[0]
    chosen = [int(rng.integers(n))]
    closest = _squared_distances(X, X[chosen]).ravel()

    for _ in range(1, k):
        total = closest.sum()
        if total > 0:
            probs = closest / total
            idx = int(rng.choice(n, p=probs))
        else:
            # remaining points all coincide with a chosen centroid
            unused = np.setdiff1d(np.arange(n), chosen)
            idx = int(rng.choice(unused))
        chosen.append(idx)
        closest = np.minimum(closest, _squared_distances(X, X[idx:idx + 1]).ravel())

    return X[chosen].copy()


def _update(X: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    k = centroids.shape[0]
    counts = np.bincount(labels, minlength=k)
    sums = np.zeros_like(centroids)
    np.add.at(sums, labels, X)

    new_centroids = centroids.copy()
    filled = counts > 0
    new_centroids[filled] = sums[filled] / counts[filled, None]

    empty = np.flatnonzero(~filled)
    if empty.size:
        # reseed each empty centroid at the point farthest from its assigned centroid
        dist = ((X - new_centroids[labels]) ** 2).sum(axis=1)
        order = np.argsort(-dist, kind='stable')
        for cluster_id, point in zip(empty, order):
            new_centroids[cluster_id] = X[point]
        logger.debug(f"Reseeded {empty.size} empty cluster(s)")

    return new_centroids


def fit_kmeans(
    X,
    k: int,
    max_iter: int = settings.KMEANS_MAX_ITER,
    tol: float = settings.KMEANS_TOL,
    seed: int = 0,
) -> ClusterModel:
    """
    Fit k-means with k-means++ seeding and Lloyd iterations

    Stops when no point changes cluster, when the largest centroid
    displacement drops below ``tol``, or after ``max_iter`` iterations.
    The returned assignment is always the nearest-centroid assignment for the
    returned centroids.

    Args:
        X: feature matrix, or a Dataset (its features are clustered)
        k: number of clusters, 1 <= k <= rows
        max_iter: iteration cap (>= 1)
        tol: centroid displacement tolerance (>= 0)
        seed: seed for the k-means++ draws

    Returns:
        ClusterModel

    Raises:
        ClusteringError: invalid k, max_iter or tol
    """
    X = np.asarray(getattr(X, 'features', X), dtype=np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ClusteringError("X must be a non-empty 2-D matrix")
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ClusteringError(f"k={k} must lie in [1, {n}] (number of instances)")
    if max_iter < 1:
        raise ClusteringError(f"max_iter must be >= 1, got {max_iter}")
    if tol < 0:
        raise ClusteringError(f"tol must be >= 0, got {tol}")

    rng = make_rng(seed)
    centroids = _kmeans_plusplus(X, k, rng)
    labels, sq = _assign(X, centroids)
    history = [float(sq.sum())]

    iterations = 0
    for iterations in range(1, max_iter + 1):
        new_centroids = _update(X, labels, centroids)
        shift = float(np.sqrt(((new_centroids - centroids) ** 2).sum(axis=1)).max())
        centroids = new_centroids

        new_labels, sq = _assign(X, centroids)
        changed = int((new_labels != labels).sum())
        labels = new_labels
        history.append(float(sq.sum()))

        if changed == 0 or shift < tol:
            break

    centroids.setflags(write=False)
    labels = labels.astype(np.intp)
    labels.setflags(write=False)

    logger.debug(f"k-means k={k}: {iterations} iteration(s), inertia={history[-1]:.6g}")
    return ClusterModel(
        centroids=centroids,
        assignment=labels,
        iterations=iterations,
        inertia=history[-1],
        inertia_history=tuple(history),
    )


def predict_cluster(model: ClusterModel, x) -> Union[int, np.ndarray]:
    """
    Index of the nearest centroid (ties -> lowest index)

    Accepts a single feature vector (returns int) or a matrix of rows
    (returns an index array).
    """
    x = np.asarray(x, dtype=np.float64)
    single = x.ndim == 1
    rows = x.reshape(1, -1) if single else x
    if rows.ndim != 2 or rows.shape[1] != model.centroids.shape[1]:
        raise ClusteringError(
            f"expected {model.centroids.shape[1]} features, got shape {x.shape}"
        )
    labels, _ = _assign(rows, model.centroids)
    return int(labels[0]) if single else labels


# ===== EXPORT =====
__all__ = ['ClusteringError', 'ClusterModel', 'fit_kmeans', 'predict_cluster']
