"""
Rank aggregation
Average ranks per block (1 = best), mean ranking and the Friedman test
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence

import numpy as np
import pandas as pd
from scipy.stats import chi2, rankdata

from config import settings


@dataclass(frozen=True)
class FriedmanResult:
    statistic: float
    p_value: float
    n_methods: int
    n_blocks: int
    alpha: float = settings.SIGNIFICANCE_LEVEL

    @property
    def significant(self) -> bool:
        return self.p_value < self.alpha

    def to_dict(self) -> Dict[str, float]:
        return {
            'statistic': self.statistic,
            'pValue': self.p_value,
            'methods': self.n_methods,
            'blocks': self.n_blocks,
            'alpha': self.alpha,
            'significant': self.significant,
        }


def rank_block(scores: Sequence[float]) -> np.ndarray:
    """
    Ranks of one block, higher score = better = lower rank; ties share the
    average rank. NaN (failed or missing) scores rank last.

    Example:
        >>> rank_block([0.9, 0.8, 0.8])
        array([1. , 2.5, 2.5])
    """
    values = np.asarray(scores, dtype=np.float64)
    keyed = np.where(np.isnan(values), np.inf, -values)
    return rankdata(keyed, method='average')


def rank_matrix(scores: pd.DataFrame) -> pd.DataFrame:
    """
    Rank every row (block) of a blocks x methods score table
    """
    ranks = np.vstack([rank_block(row) for row in scores.to_numpy(dtype=np.float64)])
    return pd.DataFrame(ranks, index=scores.index, columns=scores.columns)


def mean_ranking(scores: pd.DataFrame) -> pd.Series:
    """
    Mean rank of every method over all blocks (dataset x repeat)

    Args:
        scores: rows = blocks, columns = methods, higher = better

    Returns:
        Series indexed by method, sorted best first
    """
    if scores.shape[1] < 2:
        raise ValueError("mean ranking needs at least two methods")
    if scores.shape[0] < 1:
        raise ValueError("mean ranking needs at least one block")
    return rank_matrix(scores).mean(axis=0).sort_values(kind='stable')


def friedman_test(ranks, alpha: float = settings.SIGNIFICANCE_LEVEL) -> FriedmanResult:
    """
    Friedman statistic on a methods x blocks rank matrix

    Every column is one block and must be a ranking of the k methods
    (ranks in [1, k] summing to k (k + 1) / 2, ties averaged).

    chi2_F = 12 N / (k (k + 1)) * sum_j (Rbar_j - (k + 1) / 2)^2, with the
    p-value from the chi-squared tail with k - 1 degrees of freedom.
    A matrix where every rank is equal yields statistic 0 and p = 1.

    Raises:
        ValueError: wrong shape, fewer than 3 methods or 2 blocks, or a
            column that is not a ranking
    """
    R = np.asarray(ranks, dtype=np.float64)
    if R.ndim != 2:
        raise ValueError("ranks must be a methods x blocks matrix")
    k, n_blocks = R.shape
    if k < 3 or n_blocks < 2:
        raise ValueError(f"Friedman test needs >= 3 methods and >= 2 blocks, got {k} x {n_blocks}")

    expected = k * (k + 1) / 2.0
    bad = np.flatnonzero(
        ~np.isclose(R.sum(axis=0), expected, rtol=0.0, atol=1e-9)
        | (R.min(axis=0) < 1.0) | (R.max(axis=0) > k)
    )
    if bad.size:
        raise ValueError(
            f"column(s) {bad.tolist()} are not rankings of {k} methods "
            f"(each block must sum to {expected:g}); pass a methods x blocks matrix"
        )

    if np.all(R == R.flat[0]):
        return FriedmanResult(0.0, 1.0, k, n_blocks, alpha)

    mean_ranks = R.mean(axis=1)
    statistic = float(12.0 * n_blocks / (k * (k + 1)) * np.sum((mean_ranks - (k + 1) / 2.0) ** 2))
    p_value = float(chi2.sf(statistic, k - 1))
    return FriedmanResult(statistic, p_value, k, n_blocks, alpha)


def ranking_table(mean_ranks: Mapping[str, pd.Series]) -> pd.DataFrame:
    """
    Mean-rank table: one row per method, one column per (classifier, metric)
    """
    columns: List[pd.Series] = [series.rename(name) for name, series in mean_ranks.items()]
    table = pd.concat(columns, axis=1)
    table.index.name = 'method'
    return table.sort_index()


__all__ = [
    'FriedmanResult',
    'rank_block',
    'rank_matrix',
    'mean_ranking',
    'friedman_test',
    'ranking_table',
]
