"""
Tests for the KNN and logistic regression classifiers
"""

import numpy as np
import pytest

from core.classifiers import (
    CLASSIFIERS,
    ClassifierError,
    ClassifierSpec,
    ConvergenceError,
    fit_knn,
    fit_logreg,
    logistic_loss_and_gradient,
    predict_scores,
)
from core.data import Dataset, make_blobs
from core.metrics import ScoredPredictions


def test_knn_score_is_vote_fraction():
    # nearest three to the query at 0: rows 0 (1), 1 (1), 2 (0)
    train = Dataset(
        features=np.array([[0.1], [0.2], [0.3], [5.0], [6.0], [7.0]]),
        labels=np.array([1, 1, 0, 0, 0, 1]),
    )
    model = fit_knn(train, k=3)
    scores = predict_scores(model, [[0.0]])

    assert scores[0] == pytest.approx(2 / 3)
    assert ScoredPredictions(np.r_[scores, 0.0], [1, 0]).predictions()[0] == 1


def test_knn_tie_predicts_majority():
    train = Dataset(features=np.array([[0.0], [1.0], [9.0]]), labels=np.array([1, 0, 0]))
    scores = fit_knn(train, k=2).predict_scores([[0.4]])
    assert scores[0] == 0.5
    assert ScoredPredictions(np.r_[scores, 1.0], [0, 1]).predictions()[0] == 0


def test_knn_ignores_training_row_order():
    train = make_blobs(20, 40, 2, 1.0, seed=5)
    queries = make_blobs(10, 20, 2, 1.0, seed=6).features
    order = np.random.default_rng(0).permutation(train.n_samples)
    shuffled = train.subset(order)

    for k in (1, 3, 8):
        np.testing.assert_array_equal(
            fit_knn(train, k=k).predict_scores(queries),
            fit_knn(shuffled, k=k).predict_scores(queries),
        )


def test_knn_rejects_bad_k(blobs):
    with pytest.raises(ClassifierError):
        fit_knn(blobs, k=0)
    with pytest.raises(ClassifierError):
        fit_knn(blobs, k=blobs.n_samples + 1)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(40, 3))
    y = (rng.random(40) < 0.4).astype(np.float64)
    w, b = np.zeros(3), 0.0

    _, grad_w, grad_b = logistic_loss_and_gradient(w, b, X, y, l2=0.0)
    # at zero weights the gradient is the mean of (0.5 - y) x
    np.testing.assert_allclose(grad_w, ((0.5 - y)[:, None] * X).mean(axis=0), rtol=1e-12)

    eps = 1e-6
    numeric = np.empty(3)
    for j in range(3):
        step = np.zeros(3)
        step[j] = eps
        plus = logistic_loss_and_gradient(w + step, b, X, y, 0.0)[0]
        minus = logistic_loss_and_gradient(w - step, b, X, y, 0.0)[0]
        numeric[j] = (plus - minus) / (2 * eps)
    np.testing.assert_allclose(grad_w, numeric, rtol=1e-5)

    numeric_b = (logistic_loss_and_gradient(w, b + eps, X, y, 0.0)[0]
                 - logistic_loss_and_gradient(w, b - eps, X, y, 0.0)[0]) / (2 * eps)
    assert grad_b == pytest.approx(numeric_b, rel=1e-5)


def test_logreg_separates_blobs():
    train = make_blobs(30, 60, 2, 6.0, seed=0)
    test = make_blobs(30, 60, 2, 6.0, seed=1)
    model = fit_logreg(train)

    scores = predict_scores(model, test.features)
    assert np.all((scores >= 0) & (scores <= 1))
    accuracy = np.mean((scores > 0.5) == (test.labels == 1))
    assert accuracy > 0.95

    losses = np.array(model.state['loss_history'])
    assert losses[-1] < losses[0]


def test_logreg_loss_never_increases():
    train = make_blobs(30, 60, 3, 1.5, seed=4)
    model = fit_logreg(train, lr=0.1, max_epochs=300, tol=0.0)

    losses = np.array(model.state['loss_history'])
    assert losses.size == 300
    assert np.all(np.diff(losses) <= 1e-12)


def test_logreg_handles_constant_feature():
    train = make_blobs(10, 20, 2, 4.0, seed=0)
    constant = Dataset(
        features=np.column_stack([train.features, np.ones(train.n_samples)]),
        labels=train.labels,
    )
    scores = fit_logreg(constant).predict_scores(constant.features)
    assert np.all(np.isfinite(scores))


def test_logreg_divergence_is_reported(blobs):
    with pytest.raises(ConvergenceError):
        fit_logreg(blobs, lr=1e308, max_epochs=10)


def test_dimension_mismatch(blobs):
    model = fit_knn(blobs, k=3)
    with pytest.raises(ClassifierError):
        predict_scores(model, np.zeros((2, 5)))


def test_classifier_spec_dispatch(blobs):
    spec = ClassifierSpec('knn', {'k': 5})
    assert spec.label == 'knn(k=5)'
    assert spec.fit(blobs, seed=0).params == {'k': 5}
    assert set(CLASSIFIERS) >= {'knn', 'logreg'}
    with pytest.raises(ClassifierError):
        ClassifierSpec('gbm')
