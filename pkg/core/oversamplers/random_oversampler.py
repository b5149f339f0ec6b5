"""
Random oversampling: duplicate uniformly drawn minority rows
"""

from typing import Optional

import numpy as np

from utils import get_logger, sampling_rng
from .base import SyntheticBatch, InsufficientMinorityError, check_target

logger = get_logger(__name__)

METHOD = 'random'


def random_oversample(d, n: Optional[int] = None, seed: int = 0) -> SyntheticBatch:
    """
    Draw ``n`` minority rows uniformly with replacement and copy them exactly

    Args:
        d: Dataset
        n: rows to generate (default: majority - minority)
        seed: sampling seed

    Returns:
        SyntheticBatch whose parents are (i, i) for a copied row i
    """
    n = check_target(n, d)
    pool = d.minority_indices
    if pool.size == 0:
        raise InsufficientMinorityError("random oversampling needs at least one minority row")
    if n == 0:
        return SyntheticBatch.empty(d.n_features, METHOD, seed)

    rng = sampling_rng(seed)
    picked = pool[rng.integers(0, pool.size, size=n)]

    logger.debug(f"{d.name}: duplicated {n} minority row(s)")
    return SyntheticBatch(
        samples=d.features[picked].copy(),
        parents=np.column_stack([picked, picked]),
        method=METHOD,
        seed=seed,
    )


__all__ = ['random_oversample']
