"""
Oversamplers module
Random oversampling, SMOTE, borderline-SMOTE and k-means SMOTE
"""

from .base import (
    ALL,
    OversamplingError,
    InvalidParameterError,
    InsufficientMinorityError,
    NoMinorityClusterError,
    EmptyDangerSetError,
    NeighborTable,
    SyntheticBatch,
    interpolate,
    knn_table,
)
from .random_oversampler import random_oversample
from .smote import smote
from .borderline_smote import borderline_smote, classify_minority, NOISE, DANGER, SAFE
from .kmeans_smote import (
    AUTO,
    KmsParams,
    FilteredCluster,
    filter_clusters,
    sampling_weights,
    allocate_quotas,
    kmeans_smote,
)
from .registry import OVERSAMPLERS, OversamplerSpec

__all__ = [
    'ALL',
    'AUTO',
    'OversamplingError',
    'InvalidParameterError',
    'InsufficientMinorityError',
    'NoMinorityClusterError',
    'EmptyDangerSetError',
    'NeighborTable',
    'SyntheticBatch',
    'interpolate',
    'knn_table',
    'random_oversample',
    'smote',
    'borderline_smote',
    'classify_minority',
    'NOISE',
    'DANGER',
    'SAFE',
    'KmsParams',
    'FilteredCluster',
    'filter_clusters',
    'sampling_weights',
    'allocate_quotas',
    'kmeans_smote',
    'OVERSAMPLERS',
    'OversamplerSpec',
]
