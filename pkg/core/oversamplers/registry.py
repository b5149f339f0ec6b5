"""
Oversampler registry
A uniform (method, params) entry point used by the CLI and the experiment
harness
"""

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from config import settings

from .base import InvalidParameterError, SyntheticBatch
from .random_oversampler import random_oversample
from .smote import smote
from .borderline_smote import borderline_smote
from .kmeans_smote import KmsParams, kmeans_smote

NONE = 'none'


def _none(d, n: Optional[int] = None, seed: int = 0) -> SyntheticBatch:
    return SyntheticBatch.empty(d.n_features, NONE, seed)


def _borderline(variant: int) -> Callable[..., SyntheticBatch]:
    def run(d, seed: int = 0, **params) -> SyntheticBatch:
        return borderline_smote(d, variant=variant, seed=seed, **params)
    return run


def _kmeans_smote(d, seed: int = 0, **params) -> SyntheticBatch:
    return kmeans_smote(d, KmsParams(seed=seed, **params))


# method -> (sampler, accepted hyperparameters)
OVERSAMPLERS: Dict[str, Any] = {
    NONE: (_none, ()),
    'random': (random_oversample, ('n',)),
    'smote': (smote, ('n', 'knn')),
    'borderline1': (_borderline(1), ('n', 'knn', 'm_neighbors')),
    'borderline2': (_borderline(2), ('n', 'knn', 'm_neighbors')),
    'kmeans-smote': (_kmeans_smote, ('n', 'k', 'irt', 'knn', 'de', 'max_iter', 'tol', 'on_empty')),
}


@dataclass(frozen=True)
class OversamplerSpec:
    """
    Algorithm identifier plus hyperparameters

    Example:
        >>> spec = OversamplerSpec('kmeans-smote', {'k': 20, 'irt': 1.0, 'knn': 5, 'de': 'auto'})
        >>> balanced = spec.apply(train, seed=7)
    """
    method: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in OVERSAMPLERS:
            raise InvalidParameterError(
                f"Unknown oversampler {self.method!r}; expected one of {sorted(OVERSAMPLERS)}"
            )
        accepted = OVERSAMPLERS[self.method][1]
        unknown = sorted(set(self.params) - set(accepted))
        if unknown:
            raise InvalidParameterError(f"{self.method} does not accept {unknown}")
        object.__setattr__(self, 'params', dict(self.params))
        if self.method == 'kmeans-smote':
            # surface bad values before any data is touched
            KmsParams(**self.params)

    @property
    def label(self) -> str:
        """Stable text id, e.g. ``smote(knn=5)``"""
        if not self.params:
            return self.method
        inner = ','.join(f"{key}={self.params[key]}" for key in sorted(self.params))
        return f"{self.method}({inner})"

    def resample(self, d, seed: int = 0) -> SyntheticBatch:
        """Synthetic rows for ``d`` (default target: majority - minority)"""
        sampler = OVERSAMPLERS[self.method][0]
        return sampler(d, seed=seed, **self.params)

    def apply(self, d, seed: int = 0):
        """``d`` with the synthetic rows appended"""
        return d.append_batch(self.resample(d, seed))

    def to_dict(self) -> Dict[str, Any]:
        params = {
            key: (settings.INFINITY_LITERAL if isinstance(value, float) and math.isinf(value) else value)
            for key, value in self.params.items()
        }
        return {'method': self.method, 'params': params}


__all__ = ['NONE', 'OVERSAMPLERS', 'OversamplerSpec']
