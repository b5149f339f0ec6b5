"""
Reference classifiers
k-nearest-neighbors and L2-regularized logistic regression, both scoring
minority confidence in [0, 1]
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
from scipy.special import expit

from config import settings
from utils import get_logger
from core.oversamplers.base import knn_table

logger = get_logger(__name__)

KNN = 'knn'
LOGREG = 'logreg'


# ===== EXCEPTIONS =====

class ClassifierError(Exception):
    """Base exception cho classifier errors"""
    pass


class ConvergenceError(ClassifierError):
    """Non-finite training loss (learning rate too high)"""
    pass


# ===== DOMAIN TYPES =====

@dataclass(frozen=True, eq=False)
class TrainedModel:
    """
    Fitted classifier

    Attributes:
        kind: KNN or LOGREG (or a registered custom kind)
        params: hyperparameters the model was fitted with
        state: fitted payload (training rows for KNN; weights, bias and
            scaling for LOGREG)
        n_features: training dimensionality
    """
    kind: str
    params: Dict[str, Any]
    state: Dict[str, Any]
    n_features: int
    scorer: Callable[['TrainedModel', np.ndarray], np.ndarray] = field(repr=False, default=None)

    def predict_scores(self, X) -> np.ndarray:
        return predict_scores(self, X)


# ===== KNN =====

def _knn_scores(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    state = model.state
    table = knn_table(state['features'], X, knn=model.params['k'])
    return state['labels'][table.indices].mean(axis=1)


def fit_knn(train, k: int = 5, seed: int = 0) -> TrainedModel:
    """
    Store the training rows; score = fraction of the k nearest training rows
    (Euclidean, ties by lower row index) that are minority

    Raises:
        ClassifierError: k < 1 or k > rows(train)
    """
    if k < 1 or k > train.n_samples:
        raise ClassifierError(f"knn k={k} must lie in [1, {train.n_samples}]")
    return TrainedModel(
        kind=KNN,
        params={'k': int(k)},
        state={
            'features': train.features,
            'labels': train.labels.astype(np.float64),
        },
        n_features=train.n_features,
        scorer=_knn_scores,
    )


# ===== LOGISTIC REGRESSION =====

def logistic_loss_and_gradient(
    w: np.ndarray,
    b: float,
    X: np.ndarray,
    y: np.ndarray,
    l2: float,
) -> Tuple[float, np.ndarray, float]:
    """
    Mean logistic loss plus (l2 / 2) * ||w||^2 and its gradient

    Returns:
        (loss, grad_w, grad_b)
    """
    z = X @ w + b
    # log(1 + e^z) - y z, stable for large |z|
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w))
    residual = expit(z) - y
    grad_w = X.T @ residual / X.shape[0] + l2 * w
    grad_b = float(residual.mean())
    return loss, grad_w, grad_b


def _logreg_scores(model: TrainedModel, X: np.ndarray) -> np.ndarray:
    state = model.state
    Z = (X - state['mean']) / state['scale']
    return expit(Z @ state['weights'] + state['bias'])


def fit_logreg(
    train,
    max_epochs: int = settings.LOGREG_MAX_EPOCHS,
    lr: float = settings.LOGREG_LEARNING_RATE,
    l2: float = settings.LOGREG_L2,
    tol: float = settings.LOGREG_TOL,
    seed: int = 0,
) -> TrainedModel:
    """
    Full-batch gradient descent from zero weights on standardized features

    Training stops when the gradient norm drops below ``tol`` or after
    ``max_epochs``. Standardization statistics come from ``train`` only.
    The fit is deterministic; ``seed`` is accepted for interface symmetry.

    Raises:
        ConvergenceError: the loss became non-finite
    """
    if max_epochs < 1 or not lr > 0 or l2 < 0 or tol < 0:
        raise ClassifierError(
            f"invalid logreg parameters (max_epochs={max_epochs}, lr={lr}, l2={l2}, tol={tol})"
        )

    X = train.features
    y = train.labels.astype(np.float64)
    mean = X.mean(axis=0)
    scale = X.std(axis=0)
    scale[scale == 0] = 1.0
    Z = (X - mean) / scale

    w = np.zeros(train.n_features)
    b = 0.0
    losses: List[float] = []

    epoch = 0
    for epoch in range(1, max_epochs + 1):
        loss, grad_w, grad_b = logistic_loss_and_gradient(w, b, Z, y, l2)
        if not np.isfinite(loss):
            raise ConvergenceError(f"loss became non-finite at epoch {epoch} (lr={lr})")
        losses.append(loss)
        if np.sqrt(np.dot(grad_w, grad_w) + grad_b * grad_b) < tol:
            break
        w = w - lr * grad_w
        b = b - lr * grad_b

    logger.debug(f"logreg on {train.name}: {epoch} epoch(s), loss={losses[-1]:.6g}")
    return TrainedModel(
        kind=LOGREG,
        params={'max_epochs': max_epochs, 'lr': lr, 'l2': l2, 'tol': tol},
        state={
            'weights': w,
            'bias': b,
            'mean': mean,
            'scale': scale,
            'loss_history': tuple(losses),
        },
        n_features=train.n_features,
        scorer=_logreg_scores,
    )


# ===== SCORING =====

def predict_scores(model: TrainedModel, X) -> np.ndarray:
    """
    Minority confidence in [0, 1] for every row of ``X``

    Raises:
        ClassifierError: dimension mismatch
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ClassifierError(
            f"model expects {model.n_features} features, got shape {X.shape}"
        )
    scores = np.asarray(model.scorer(model, X), dtype=np.float64)
    return np.clip(scores, 0.0, 1.0)


# ===== REGISTRY =====

# name -> fit(train, seed=..., **params) returning an object with predict_scores
CLASSIFIERS: Dict[str, Callable[..., Any]] = {
    KNN: fit_knn,
    LOGREG: fit_logreg,
}


def register_classifier(name: str, fit: Callable[..., Any]) -> None:
    """Plug in another classifier (e.g. a tree ensemble) under ``name``"""
    CLASSIFIERS[name] = fit


@dataclass(frozen=True)
class ClassifierSpec:
    """Classifier name plus hyperparameters, e.g. ClassifierSpec('knn', {'k': 5})"""
    name: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in CLASSIFIERS:
            raise ClassifierError(
                f"Unknown classifier {self.name!r}; expected one of {sorted(CLASSIFIERS)}"
            )
        object.__setattr__(self, 'params', dict(self.params))

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ','.join(f"{key}={self.params[key]}" for key in sorted(self.params))
        return f"{self.name}({inner})"

    def fit(self, train, seed: int = 0):
        return CLASSIFIERS[self.name](train, seed=seed, **self.params)

    def to_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'params': dict(self.params)}


# ===== EXPORT =====
__all__ = [
    'KNN',
    'LOGREG',
    'ClassifierError',
    'ConvergenceError',
    'TrainedModel',
    'fit_knn',
    'fit_logreg',
    'logistic_loss_and_gradient',
    'predict_scores',
    'CLASSIFIERS',
    'register_classifier',
    'ClassifierSpec',
]
