"""
SMOTE: interpolate a random minority row with one of its minority neighbors
"""

from typing import Optional

from config import settings
from utils import get_logger, sampling_rng
from .base import (
    KnnValue,
    SyntheticBatch,
    InsufficientMinorityError,
    check_target,
    resolve_knn,
    smote_draws,
)

logger = get_logger(__name__)

METHOD = 'smote'


def smote(
    d,
    n: Optional[int] = None,
    knn: KnnValue = settings.DEFAULT_KNN,
    seed: int = 0,
) -> SyntheticBatch:
    """
    Generate ``n`` synthetic minority rows

    For every sample: draw a minority row a uniformly, draw b uniformly among
    the min(knn, minority - 1) nearest minority neighbors of a, and emit
    a + w * (b - a) with w uniform on [0, 1). knn = 0 degenerates to random
    oversampling (exact copies).

    Args:
        d: Dataset
        n: rows to generate (default: majority - minority)
        knn: neighbors considered, int >= 0 or ALL
        seed: sampling seed

    Raises:
        InsufficientMinorityError: fewer than two minority rows with knn >= 1
    """
    n = check_target(n, d)
    pool = d.minority_indices
    resolve_knn(knn, pool.size)  # validates the value

    if pool.size == 0:
        raise InsufficientMinorityError("SMOTE needs minority rows")
    if pool.size < 2 and knn != 0:
        raise InsufficientMinorityError(
            f"SMOTE with knn={knn} needs at least two minority rows, got {pool.size}"
        )
    if n == 0:
        return SyntheticBatch.empty(d.n_features, METHOD, seed)

    samples, parents = smote_draws(d.features, pool, n, knn, sampling_rng(seed))

    logger.debug(f"{d.name}: SMOTE generated {n} row(s) with knn={knn}")
    return SyntheticBatch(samples=samples, parents=parents, method=METHOD, seed=seed)


__all__ = ['smote']
