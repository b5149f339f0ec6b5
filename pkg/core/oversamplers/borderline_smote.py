"""
Borderline-SMOTE (variants 1 and 2)

Only minority rows "in danger" seed new samples: rows whose m nearest
neighbors (both classes) are at least half but not all majority. Rows
surrounded entirely by the majority are treated as noise, rows with a
minority-dominated neighborhood as safe; neither seeds samples.
"""

from typing import Optional

import numpy as np

from config import settings
from utils import get_logger, sampling_rng
from .base import (
    SyntheticBatch,
    InsufficientMinorityError,
    InvalidParameterError,
    EmptyDangerSetError,
    check_target,
    knn_table,
    resolve_knn,
)
from .smote import smote

logger = get_logger(__name__)

NOISE = 'noise'
DANGER = 'danger'
SAFE = 'safe'


def classify_minority(d, m_neighbors: int) -> np.ndarray:
    """
    Label every minority row NOISE, DANGER or SAFE

    Returns:
        object array aligned with d.minority_indices
    """
    minority = d.minority_indices
    table = knn_table(d.features, d.features[minority], knn=m_neighbors, query_indices=minority)
    majority_fraction = (d.labels[table.indices] == 0).mean(axis=1)

    kinds = np.full(minority.size, SAFE, dtype=object)
    kinds[majority_fraction >= 0.5] = DANGER
    kinds[majority_fraction == 1.0] = NOISE
    return kinds


def _danger_rows(d, m_neighbors: int):
    kinds = classify_minority(d, m_neighbors)
    minority = d.minority_indices
    danger = minority[kinds == DANGER]
    noise = minority[kinds == NOISE]
    if danger.size == 0:
        raise EmptyDangerSetError(
            f"{d.name}: no minority row in danger "
            f"({int((kinds == SAFE).sum())} safe, {noise.size} noise)"
        )
    return danger, noise


def borderline_smote(
    d,
    n: Optional[int] = None,
    knn: int = settings.DEFAULT_KNN,
    m_neighbors: Optional[int] = None,
    variant: int = 1,
    seed: int = 0,
) -> SyntheticBatch:
    """
    Borderline-SMOTE1/2

    Variant 1 interpolates danger rows with their nearest non-noise minority
    neighbors (w in [0, 1)). Variant 2 also admits majority rows among the
    candidate neighbors; with a majority parent the weight is drawn from
    [0, 0.5), keeping the sample closer to the minority parent.

    When no row is in danger the call falls back to plain SMOTE and records
    a warning on the batch.

    Args:
        d: Dataset
        n: rows to generate (default: majority - minority)
        knn: neighbors considered for interpolation
        m_neighbors: neighbors used to classify rows (default: knn)
        variant: 1 or 2
        seed: sampling seed
    """
    if variant not in (1, 2):
        raise InvalidParameterError(f"variant must be 1 or 2, got {variant}")
    if m_neighbors is None:
        m_neighbors = knn
    if isinstance(knn, str) or knn < 1 or m_neighbors < 1:
        raise InvalidParameterError("knn and m_neighbors must be integers >= 1")

    method = f"borderline{variant}"
    n = check_target(n, d)
    if d.stats.minority_count < 2:
        raise InsufficientMinorityError(f"{method} needs at least two minority rows")
    if n == 0:
        return SyntheticBatch.empty(d.n_features, method, seed)

    try:
        danger, noise = _danger_rows(d, m_neighbors)
    except EmptyDangerSetError as e:
        message = f"{e}; falling back to SMOTE"
        logger.warning(message)
        return smote(d, n, knn, seed).with_method(method, warnings=[message])

    keep = np.ones(d.n_samples, dtype=bool)
    keep[noise] = False
    if variant == 1:
        keep &= d.labels == 1
    pool = np.flatnonzero(keep)

    # position of each danger row inside the pool
    danger_pos = np.searchsorted(pool, danger)
    kk = resolve_knn(knn, pool.size - 1)

    rng = sampling_rng(seed)
    base = rng.integers(0, danger.size, size=n)
    if kk > 0:
        table = knn_table(d.features[pool], d.features[danger], knn=kk, query_indices=danger_pos)
        rank = rng.integers(0, kk, size=n)
        other = pool[table.indices[base, rank]]
    else:
        other = danger[base]
    w = rng.random(n)
    if variant == 2:
        w = np.where(d.labels[other] == 0, 0.5 * w, w)

    a = d.features[danger[base]]
    b = d.features[other]
    samples = a + w[:, None] * (b - a)

    logger.debug(
        f"{d.name}: {method} generated {n} row(s) from {danger.size} danger row(s), "
        f"{noise.size} noise row(s) excluded"
    )
    return SyntheticBatch(
        samples=samples,
        parents=np.column_stack([danger[base], other]),
        method=method,
        seed=seed,
    )


__all__ = ['NOISE', 'DANGER', 'SAFE', 'classify_minority', 'borderline_smote']
