"""
Base types and shared kernels for oversamplers
Interpolation, exact Euclidean neighbor tables, synthetic batches and the
SMOTE draw contract reused by every SMOTE-family sampler
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from config import settings
from utils import get_logger

logger = get_logger(__name__)

# knn literal meaning "every available neighbor"
ALL = settings.ALL_LITERAL

KnnValue = Union[int, str]


# ===== EXCEPTIONS =====

class OversamplingError(Exception):
    """Base exception cho oversampling errors"""
    pass


class InvalidParameterError(OversamplingError, ValueError):
    """Hyperparameter outside its valid range"""
    pass


class InsufficientMinorityError(OversamplingError, ValueError):
    """Not enough minority instances to interpolate"""
    pass


class NoMinorityClusterError(OversamplingError):
    """The filter step selected no cluster"""

    def __init__(self, k: int, irt: float):
        self.k = k
        self.irt = irt
        super().__init__(
            f"No cluster passed the filter (k={k}, irt={irt}). "
            f"Raise irt or lower k, or enable the SMOTE fallback."
        )


class EmptyDangerSetError(OversamplingError):
    """Borderline-SMOTE found no minority instance in danger"""
    pass


# ===== DOMAIN TYPES =====

@dataclass(frozen=True, eq=False)
class NeighborTable:
    """
    Exact Euclidean neighbors, one row per query

    Row i lists neighbor indices (into the reference points) by
    non-decreasing distance, ties broken by lower index.
    """
    indices: np.ndarray
    distances: np.ndarray

    @property
    def knn(self) -> int:
        return int(self.indices.shape[1])

    def __len__(self) -> int:
        return int(self.indices.shape[0])

    def neighbors(self, query: int) -> List[Tuple[int, float]]:
        return list(zip(self.indices[query].tolist(), self.distances[query].tolist()))


@dataclass(frozen=True, eq=False)
class SyntheticBatch:
    """
    Generated minority rows with provenance

    Attributes:
        samples: (n, m) generated rows
        parents: (n, 2) row indices (into the oversampled dataset) of the
            two interpolation endpoints; equal for duplicates. Use
            minority_parents() for positions in the minority set
        method: sampler identifier
        seed: seed the batch was drawn with
        cluster_ids: (n,) source cluster per row, -1 outside k-means SMOTE
        warnings: fallback / degeneracy notes
        clusters: FilteredCluster records (k-means SMOTE only)
    """
    samples: np.ndarray
    parents: np.ndarray
    method: str
    seed: int
    cluster_ids: Optional[np.ndarray] = None
    warnings: Tuple[str, ...] = field(default=())
    clusters: Tuple = field(default=())

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        parents = np.asarray(self.parents, dtype=np.intp).reshape(-1, 2)
        if samples.ndim != 2 or samples.shape[0] != parents.shape[0]:
            raise ValueError("samples and parents must have one row per synthetic instance")
        cluster_ids = self.cluster_ids
        if cluster_ids is None:
            cluster_ids = np.full(samples.shape[0], -1, dtype=np.intp)
        cluster_ids = np.asarray(cluster_ids, dtype=np.intp)
        for array in (samples, parents, cluster_ids):
            array.setflags(write=False)
        object.__setattr__(self, 'samples', samples)
        object.__setattr__(self, 'parents', parents)
        object.__setattr__(self, 'cluster_ids', cluster_ids)
        object.__setattr__(self, 'warnings', tuple(self.warnings))
        object.__setattr__(self, 'clusters', tuple(self.clusters))

    def __len__(self) -> int:
        return int(self.samples.shape[0])

    @classmethod
    def empty(cls, n_features: int, method: str, seed: int, **kwargs) -> 'SyntheticBatch':
        return cls(
            samples=np.empty((0, n_features)),
            parents=np.empty((0, 2), dtype=np.intp),
            method=method,
            seed=seed,
            **kwargs
        )

    def with_method(self, method: str, warnings: Sequence[str] = ()) -> 'SyntheticBatch':
        return SyntheticBatch(
            samples=self.samples,
            parents=self.parents,
            method=method,
            seed=self.seed,
            cluster_ids=self.cluster_ids,
            warnings=tuple(self.warnings) + tuple(warnings),
            clusters=self.clusters,
        )

    def minority_parents(self, minority_indices: Sequence[int]) -> np.ndarray:
        """
        Parents as positions in the source minority set

        ``minority_indices`` are the sorted dataset rows of the minority
        class (``Dataset.minority_indices``). Parents outside that set
        (majority endpoints of borderline-SMOTE2) map to -1.
        """
        minority = np.asarray(minority_indices, dtype=np.intp)
        pos = np.searchsorted(minority, self.parents)
        pos = np.minimum(pos, max(minority.size - 1, 0))
        found = minority.size > 0 and minority[pos] == self.parents
        return np.where(found, pos, -1).astype(np.intp)

    def to_frame(self, feature_names: Optional[Sequence[str]] = None) -> pd.DataFrame:
        """Samples plus provenance columns (parentA, parentB, method, cluster)"""
        if feature_names is None:
            feature_names = [f"x{i}" for i in range(self.samples.shape[1])]
        frame = pd.DataFrame(self.samples, columns=list(feature_names))
        frame['parentA'] = self.parents[:, 0]
        frame['parentB'] = self.parents[:, 1]
        frame['method'] = self.method
        frame['cluster'] = self.cluster_ids
        return frame


# ===== KERNELS =====

def resolve_knn(knn: KnnValue, available: int) -> int:
    """Clamp ``knn`` (int or ALL) to the number of available neighbors"""
    if isinstance(knn, str):
        if knn.lower() != ALL:
            raise InvalidParameterError(f"knn must be an integer or {ALL!r}, got {knn!r}")
        return max(available, 0)
    if knn < 0:
        raise InvalidParameterError(f"knn must be >= 0, got {knn}")
    return max(min(int(knn), available), 0)


def interpolate(a, b, w: float) -> np.ndarray:
    """
    Point on the segment from ``a`` to ``b``: a + w * (b - a)

    Example:
        >>> interpolate([0, 0], [2, 2], 0.5)
        array([1., 1.])
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"w must lie in [0, 1], got {w}")
    if w == 1.0:
        return b.copy()
    return a + w * (b - a)


def knn_table(
    points,
    queries=None,
    knn: KnnValue = ALL,
    query_indices: Optional[Sequence[int]] = None,
) -> NeighborTable:
    """
    Exact k-nearest-neighbor table under the Euclidean metric

    Args:
        points: (n, m) reference points
        queries: (q, m) query rows; None queries the points themselves
        knn: neighbors per query, or ALL; clamped to what is available
        query_indices: for each query, the index of the reference point it
            coincides with (excluded from its list); implied when queries is None

    Returns:
        NeighborTable with ties broken by lower reference index
    """
    P = np.asarray(points, dtype=np.float64)
    if P.ndim != 2 or P.shape[0] == 0:
        raise ValueError("points must be a non-empty 2-D matrix")

    if queries is None:
        Q = P
        query_indices = np.arange(P.shape[0])
    else:
        Q = np.asarray(queries, dtype=np.float64)
        if Q.ndim == 1:
            Q = Q.reshape(1, -1)
        if Q.shape[1] != P.shape[1]:
            raise ValueError(f"queries have {Q.shape[1]} features, points have {P.shape[1]}")

    available = P.shape[0] - (1 if query_indices is not None else 0)
    kk = resolve_knn(knn, available)

    if kk == 0 or Q.shape[0] == 0:
        return NeighborTable(
            indices=np.empty((Q.shape[0], 0), dtype=np.intp),
            distances=np.empty((Q.shape[0], 0)),
        )

    distances = cdist(Q, P, metric='euclidean')
    if query_indices is not None:
        query_indices = np.asarray(query_indices, dtype=np.intp)
        distances[np.arange(Q.shape[0]), query_indices] = np.inf

    order = np.argsort(distances, axis=1, kind='stable')[:, :kk]
    return NeighborTable(
        indices=order,
        distances=np.take_along_axis(distances, order, axis=1),
    )


def default_target(d) -> int:
    """Samples needed so both classes count the same"""
    stats = d.stats
    return stats.majority_count - stats.minority_count


def check_target(n: Optional[int], d) -> int:
    if n is None:
        return default_target(d)
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    return int(n)


def smote_draws(
    features: np.ndarray,
    pool: np.ndarray,
    n: int,
    knn: KnnValue,
    rng: np.random.Generator,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    The SMOTE draw contract shared by SMOTE and k-means SMOTE

    Draw order: n base positions, then n neighbor ranks (skipped when the
    clamped knn is 0), then n weights. With knn clamped to 0 every sample is
    an exact copy of its base row.

    Args:
        features: full feature matrix
        pool: row indices (into features) eligible as parents, ascending
        n: number of samples
        knn: neighbors considered (int or ALL), clamped to len(pool) - 1
        rng: generator to draw from

    Returns:
        (samples, parents) with parents as row indices into ``features``
    """
    X = features[pool]
    kk = resolve_knn(knn, X.shape[0] - 1)

    base = rng.integers(0, X.shape[0], size=n)
    if kk > 0:
        table = knn_table(X, knn=kk)
        rank = rng.integers(0, kk, size=n)
        other = table.indices[base, rank]
    else:
        other = base
    w = rng.random(n)

    if kk > 0:
        samples = X[base] + w[:, None] * (X[other] - X[base])
    else:
        samples = X[base].copy()

    parents = np.column_stack([pool[base], pool[other]])
    return samples, parents


# ===== EXPORT =====
__all__ = [
    'ALL',
    'OversamplingError',
    'InvalidParameterError',
    'InsufficientMinorityError',
    'NoMinorityClusterError',
    'EmptyDangerSetError',
    'NeighborTable',
    'SyntheticBatch',
    'resolve_knn',
    'interpolate',
    'knn_table',
    'default_target',
    'check_target',
    'smote_draws',
]
