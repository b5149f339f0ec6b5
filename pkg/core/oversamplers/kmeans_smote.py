"""
K-means SMOTE

Cluster the whole input space with k-means, keep clusters dominated by the
minority class, share the synthetic budget by minority sparsity, then run
SMOTE inside each kept cluster.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Optional, Union

import numpy as np
from scipy.spatial.distance import pdist
from scipy.special import logsumexp

from config import settings
from utils import get_logger, sampling_rng, LoggerContext
from core.kmeans import ClusterModel, fit_kmeans
from .base import (
    ALL,
    KnnValue,
    SyntheticBatch,
    InvalidParameterError,
    NoMinorityClusterError,
    check_target,
    resolve_knn,
    smote_draws,
)
from .smote import smote

logger = get_logger(__name__)

METHOD = 'kmeans-smote'

# density exponent literal: use the number of features
AUTO = settings.AUTO_LITERAL

ON_EMPTY_ERROR = 'error'
ON_EMPTY_SMOTE = 'smote'


@dataclass(frozen=True)
class KmsParams:
    """
    K-means SMOTE hyperparameters

    Attributes:
        k: number of clusters (>= 1)
        irt: imbalance ratio threshold (> 0, may be math.inf)
        knn: SMOTE neighbors (>= 0 or ALL)
        de: density exponent (>= 0 or AUTO = number of features)
        n: samples to generate (default: majority - minority)
        seed: seed for clustering and sampling
        on_empty: 'error' raises NoMinorityClusterError when no cluster is
            kept, 'smote' falls back to plain SMOTE
    """
    k: int = 2
    irt: float = settings.DEFAULT_IRT
    knn: KnnValue = settings.DEFAULT_KNN
    de: Union[float, str] = AUTO
    n: Optional[int] = None
    seed: int = 0
    max_iter: int = settings.KMEANS_MAX_ITER
    tol: float = settings.KMEANS_TOL
    on_empty: str = ON_EMPTY_ERROR

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 1:
            raise InvalidParameterError(f"k must be an integer >= 1, got {self.k}")
        if not self.irt > 0:
            raise InvalidParameterError(f"irt must be > 0, got {self.irt}")
        resolve_knn(self.knn, 0)
        if isinstance(self.de, str):
            if self.de.lower() != AUTO:
                raise InvalidParameterError(f"de must be a number >= 0 or {AUTO!r}, got {self.de!r}")
        elif not (self.de >= 0 and math.isfinite(self.de)):
            raise InvalidParameterError(f"de must be >= 0, got {self.de}")
        if self.n is not None and self.n < 0:
            raise InvalidParameterError(f"n must be >= 0, got {self.n}")
        if self.on_empty not in (ON_EMPTY_ERROR, ON_EMPTY_SMOTE):
            raise InvalidParameterError(f"on_empty must be 'error' or 'smote', got {self.on_empty!r}")


@dataclass(frozen=True, eq=False)
class FilteredCluster:
    """A cluster kept by the filter step, progressively annotated"""
    cluster_id: int
    minority_idx: np.ndarray
    majority_idx: np.ndarray
    imbalance_ratio: float
    avg_minority_distance: float = math.nan
    log_sparsity: float = math.nan
    sampling_weight: float = math.nan
    quota: int = 0

    @property
    def minority_count(self) -> int:
        return int(self.minority_idx.size)

    @property
    def majority_count(self) -> int:
        return int(self.majority_idx.size)

    @property
    def sparsity_factor(self) -> float:
        with np.errstate(over='ignore', under='ignore'):
            return float(np.exp(self.log_sparsity))

    def to_dict(self) -> dict:
        return {
            'clusterId': self.cluster_id,
            'minorityCount': self.minority_count,
            'majorityCount': self.majority_count,
            'imbalanceRatio': self.imbalance_ratio,
            'avgMinorityDistance': self.avg_minority_distance,
            'logSparsity': self.log_sparsity,
            'samplingWeight': self.sampling_weight,
            'quota': self.quota,
        }


# ===== STEP 1: FILTER =====

def filter_clusters(model: ClusterModel, d, irt: float) -> List[FilteredCluster]:
    """
    Keep clusters whose (majority + 1) / (minority + 1) is strictly below irt

    Clusters without minority members are never kept: they hold no parents.
    """
    if model.assignment.shape[0] != d.n_samples:
        raise ValueError("cluster model was not fitted on this dataset")

    kept = []
    for cluster_id in range(model.k):
        members = model.cluster_members(cluster_id)
        minority = members[d.labels[members] == 1]
        majority = members[d.labels[members] == 0]
        ratio = (majority.size + 1) / (minority.size + 1)
        if minority.size > 0 and ratio < irt:
            kept.append(FilteredCluster(
                cluster_id=cluster_id,
                minority_idx=minority,
                majority_idx=majority,
                imbalance_ratio=ratio,
            ))

    logger.debug(f"Filter kept {len(kept)}/{model.k} cluster(s) at irt={irt}")
    return kept


# ===== STEP 2: SAMPLING WEIGHTS =====

def sampling_weights(
    clusters: List[FilteredCluster],
    d,
    de: Union[float, str] = AUTO,
) -> List[FilteredCluster]:
    """
    Weight each kept cluster by its minority sparsity

    sparsity = avgMinorityDistance ** de / minorityCount, normalized over the
    clusters. Computed in the log domain; a single-minority cluster borrows
    the mean average distance of the others, and a zero average distance is
    replaced by a tiny epsilon.
    """
    if not clusters:
        raise ValueError("sampling_weights needs at least one cluster")

    exponent = float(d.n_features) if isinstance(de, str) else float(de)

    avg = np.full(len(clusters), np.nan)
    for i, cluster in enumerate(clusters):
        if cluster.minority_count >= 2:
            avg[i] = pdist(d.features[cluster.minority_idx], metric='euclidean').mean()

    known = ~np.isnan(avg)
    if known.any():
        avg[~known] = avg[known].mean()
    else:
        avg[:] = settings.ZERO_DISTANCE_EPSILON
    avg = np.maximum(avg, settings.ZERO_DISTANCE_EPSILON)

    counts = np.array([c.minority_count for c in clusters], dtype=np.float64)
    log_sparsity = exponent * np.log(avg) - np.log(counts)
    weights = np.exp(log_sparsity - logsumexp(log_sparsity))

    return [
        replace(
            cluster,
            avg_minority_distance=float(avg[i]),
            log_sparsity=float(log_sparsity[i]),
            sampling_weight=float(weights[i]),
        )
        for i, cluster in enumerate(clusters)
    ]


# ===== STEP 3: QUOTAS =====

def allocate_quotas(clusters: List[FilteredCluster], n: int) -> List[FilteredCluster]:
    """
    Split ``n`` by sampling weight with the largest-remainder rule

    Every cluster gets floor(n * weight); leftover units go to the largest
    remainders, ties to the sparser cluster, then the lower cluster id.
    The quotas always sum to exactly n.
    """
    if n < 0:
        raise InvalidParameterError(f"n must be >= 0, got {n}")
    if not clusters:
        return []

    exact = np.array([n * c.sampling_weight for c in clusters])
    quotas = np.floor(exact).astype(np.int64)
    # float noise must not break remainder ties
    remainders = np.round(exact - quotas, 12)

    leftover = int(n - quotas.sum())
    order = sorted(
        range(len(clusters)),
        key=lambda i: (-remainders[i], -clusters[i].sampling_weight, clusters[i].cluster_id),
    )
    for i in order[:max(leftover, 0)]:
        quotas[i] += 1
    # weights summing a hair above one can overshoot by a unit
    for i in reversed(order[len(order) + min(leftover, 0):]):
        quotas[i] -= 1

    return [replace(cluster, quota=int(quotas[i])) for i, cluster in enumerate(clusters)]


# ===== ALGORITHM =====

def kmeans_smote(d, params: Optional[KmsParams] = None) -> SyntheticBatch:
    """
    Oversample ``d`` with k-means SMOTE

    Steps: fit_kmeans -> filter_clusters -> sampling_weights ->
    allocate_quotas -> SMOTE inside each kept cluster. Each cluster draws from
    its own substream (seed, cluster id), so with k=1 and irt=inf the output
    is bit-identical to smote(d, n, knn, seed).

    Raises:
        NoMinorityClusterError: no cluster kept and on_empty='error'
        ClusteringError: k exceeds the number of instances
    """
    params = params or KmsParams()
    n = check_target(params.n, d)

    if n == 0:
        return SyntheticBatch.empty(d.n_features, METHOD, params.seed)

    with LoggerContext(logger, f"k-means SMOTE on {d.name} (k={params.k}, irt={params.irt})",
                       level=logging.DEBUG):
        model = fit_kmeans(d.features, params.k, params.max_iter, params.tol, seed=params.seed)
        kept = filter_clusters(model, d, params.irt)

        if not kept:
            if params.on_empty == ON_EMPTY_SMOTE:
                message = (
                    f"no cluster passed the filter (k={params.k}, irt={params.irt}); "
                    f"fell back to SMOTE"
                )
                logger.warning(f"{d.name}: {message}")
                return smote(d, n, params.knn, params.seed).with_method(METHOD, warnings=[message])
            raise NoMinorityClusterError(params.k, params.irt)

        clusters = allocate_quotas(sampling_weights(kept, d, params.de), n)

        warnings = []
        samples, parents, cluster_ids = [], [], []
        for cluster in clusters:
            if cluster.quota == 0:
                continue
            if cluster.minority_count == 1 and params.knn != 0:
                warnings.append(
                    f"cluster {cluster.cluster_id} has a single minority instance; duplicated it"
                )
            rows, pairs = smote_draws(
                d.features,
                cluster.minority_idx,
                cluster.quota,
                params.knn,
                sampling_rng(params.seed, cluster.cluster_id),
            )
            samples.append(rows)
            parents.append(pairs)
            cluster_ids.append(np.full(cluster.quota, cluster.cluster_id, dtype=np.intp))

    for message in warnings:
        logger.warning(f"{d.name}: {message}")

    return SyntheticBatch(
        samples=np.vstack(samples),
        parents=np.vstack(parents),
        method=METHOD,
        seed=params.seed,
        cluster_ids=np.concatenate(cluster_ids),
        warnings=warnings,
        clusters=clusters,
    )


# ===== EXPORT =====
__all__ = [
    'AUTO',
    'ALL',
    'KmsParams',
    'FilteredCluster',
    'filter_clusters',
    'sampling_weights',
    'allocate_quotas',
    'kmeans_smote',
]
