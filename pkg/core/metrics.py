"""
Imbalance-aware classification metrics
Confusion matrix, basic rates, F1, g-mean and step-wise AUPRC
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Sequence

import numpy as np

from config import settings


class MetricError(ValueError):
    """Invalid metric input (length mismatch, missing class)"""
    pass


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class ConfusionMatrix:
    """Binary confusion matrix, positive = minority"""
    tp: int
    fp: int
    tn: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.tn, self.fn) < 0:
            raise MetricError("confusion counts must be >= 0")

    @property
    def positives(self) -> int:
        return self.tp + self.fn

    @property
    def negatives(self) -> int:
        return self.tn + self.fp

    @property
    def predicted_positives(self) -> int:
        return self.tp + self.fp

    @property
    def total(self) -> int:
        return self.positives + self.negatives

    def to_dict(self) -> Dict[str, int]:
        return {'tp': self.tp, 'fp': self.fp, 'tn': self.tn, 'fn': self.fn}


@dataclass(frozen=True, eq=False)
class ScoredPredictions:
    """Minority-confidence scores in [0, 1] with the true labels"""
    scores: np.ndarray
    truth: np.ndarray

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64).ravel()
        truth = np.asarray(self.truth).ravel()
        if scores.shape != truth.shape:
            raise MetricError(f"{scores.size} scores for {truth.size} labels")
        if not np.all((truth == 0) | (truth == 1)):
            raise MetricError("truth must be binary")
        truth = truth.astype(np.int8)
        if truth.sum() == 0 or truth.sum() == truth.size:
            raise MetricError("need at least one positive and one negative instance")
        if not np.all(np.isfinite(scores)):
            raise MetricError("scores must be finite")
        object.__setattr__(self, 'scores', scores)
        object.__setattr__(self, 'truth', truth)

    def predictions(self, threshold: float = settings.DECISION_THRESHOLD) -> np.ndarray:
        """
        Binary predictions: score > threshold

        The comparison is strict so a score of exactly 0.5 (an even-k KNN
        split vote) predicts the majority class.
        """
        return (self.scores > threshold).astype(np.int8)


@dataclass(frozen=True)
class Rates:
    accuracy: float
    error_rate: float
    sensitivity: float
    specificity: float
    precision: float
    precision_defined: bool

    def to_dict(self) -> Dict[str, float]:
        return {
            'accuracy': self.accuracy,
            'errorRate': self.error_rate,
            'sensitivity': self.sensitivity,
            'specificity': self.specificity,
            'precision': self.precision,
            'precisionDefined': self.precision_defined,
        }


# ===== OPERATIONS =====

def _binary(values, what: str) -> np.ndarray:
    array = np.asarray(values).ravel()
    if not np.all((array == 0) | (array == 1)):
        raise MetricError(f"{what} must contain only 0 and 1")
    return array.astype(bool)


def confusion(pred: Sequence[int], truth: Sequence[int]) -> ConfusionMatrix:
    """
    Count tp/fp/tn/fn

    Example:
        >>> confusion([1, 0, 1, 0], [1, 1, 0, 0])
        ConfusionMatrix(tp=1, fp=1, tn=1, fn=1)
    """
    p = _binary(pred, 'pred')
    t = _binary(truth, 'truth')
    if p.shape != t.shape:
        raise MetricError(f"length mismatch: {p.size} predictions, {t.size} labels")
    return ConfusionMatrix(
        tp=int(np.sum(p & t)),
        fp=int(np.sum(p & ~t)),
        tn=int(np.sum(~p & ~t)),
        fn=int(np.sum(~p & t)),
    )


def basic_rates(cm: ConfusionMatrix) -> Rates:
    """
    Accuracy, error rate, sensitivity, specificity, precision

    Precision without positive predictions is reported as 0 with
    ``precision_defined=False``.
    """
    if cm.positives == 0 or cm.negatives == 0:
        raise MetricError("both classes must be present in the truth labels")

    accuracy = (cm.tp + cm.tn) / cm.total
    defined = cm.predicted_positives > 0
    return Rates(
        accuracy=accuracy,
        error_rate=1.0 - accuracy,
        sensitivity=cm.tp / cm.positives,
        specificity=cm.tn / cm.negatives,
        precision=cm.tp / cm.predicted_positives if defined else 0.0,
        precision_defined=defined,
    )


def f1(cm: ConfusionMatrix, alpha: float = 1.0) -> float:
    """(1 + alpha) * sens * prec / (sens + alpha * prec); 0 on a zero denominator"""
    if not alpha > 0:
        raise MetricError(f"alpha must be > 0, got {alpha}")
    rates = basic_rates(cm)
    denominator = rates.sensitivity + alpha * rates.precision
    if denominator == 0:
        return 0.0
    return (1 + alpha) * rates.sensitivity * rates.precision / denominator


def gmean(cm: ConfusionMatrix) -> float:
    rates = basic_rates(cm)
    return math.sqrt(rates.sensitivity * rates.specificity)


def auprc(sp: ScoredPredictions) -> float:
    """
    Area under the precision-recall curve by the step-wise (average
    precision) rule: sum over thresholds of (R_i - R_{i-1}) * P_i

    Scores are visited in descending order and equal scores are grouped
    into a single threshold, so the result does not depend on row order.
    """
    order = np.argsort(-sp.scores, kind='stable')
    scores = sp.scores[order]
    truth = sp.truth[order]

    # last row of every block of equal scores
    last = np.ones(scores.size, dtype=bool)
    last[:-1] = scores[:-1] != scores[1:]

    tp = np.cumsum(truth)[last]
    pp = np.flatnonzero(last) + 1
    hits = np.diff(tp, prepend=0)

    positives = int(sp.truth.sum())
    return float(np.sum((tp / pp) * hits) / positives)


# ===== REGISTRY =====

def _thresholded(fn: Callable[[ConfusionMatrix], float]) -> Callable[[ScoredPredictions], float]:
    def score(sp: ScoredPredictions) -> float:
        return fn(confusion(sp.predictions(), sp.truth))
    return score


def _rate(name: str) -> Callable[[ConfusionMatrix], float]:
    return lambda cm: getattr(basic_rates(cm), name)


# name -> function of ScoredPredictions, higher is better
METRICS: Dict[str, Callable[[ScoredPredictions], float]] = {
    'g_mean': _thresholded(gmean),
    'f1': _thresholded(f1),
    'auprc': auprc,
    'accuracy': _thresholded(_rate('accuracy')),
    'sensitivity': _thresholded(_rate('sensitivity')),
    'specificity': _thresholded(_rate('specificity')),
    'precision': _thresholded(_rate('precision')),
}


def score_all(sp: ScoredPredictions, names: Sequence[str]) -> Dict[str, float]:
    """Evaluate the named metrics on one set of scored predictions"""
    unknown = [name for name in names if name not in METRICS]
    if unknown:
        raise MetricError(f"Unknown metric(s) {unknown}; expected {sorted(METRICS)}")
    return {name: float(METRICS[name](sp)) for name in names}


# ===== EXPORT =====
__all__ = [
    'MetricError',
    'ConfusionMatrix',
    'ScoredPredictions',
    'Rates',
    'confusion',
    'basic_rates',
    'f1',
    'gmean',
    'auprc',
    'METRICS',
    'score_all',
]
