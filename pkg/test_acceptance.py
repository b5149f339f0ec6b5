"""
End-to-end properties of the oversamplers and the evaluation statistics
"""

import math
import os
from pathlib import Path

import numpy as np
import pytest

from core.data import load_csv, standardize
from core.managers import GridSpec, run_experiment
from core.metrics import ScoredPredictions, auprc
from core.oversamplers import KmsParams, OversamplerSpec, kmeans_smote, smote
from core.ranking import friedman_test

SEEDS = range(20)


# ===== LIMIT CASES =====

def test_single_cluster_without_filter_is_smote(fixtures):
    for d in fixtures:
        for seed in SEEDS:
            expected = smote(d, knn=5, seed=seed)
            batch = kmeans_smote(d, KmsParams(k=1, irt=math.inf, knn=5, seed=seed))

            np.testing.assert_array_equal(batch.samples, expected.samples)
            np.testing.assert_array_equal(batch.parents, expected.parents)


def test_single_cluster_without_neighbours_copies_rows(fixtures):
    for d in fixtures:
        minority = {tuple(row) for row in d.features[d.minority_indices]}
        for seed in SEEDS:
            batch = kmeans_smote(d, KmsParams(k=1, irt=math.inf, knn=0, seed=seed))
            assert all(tuple(row) in minority for row in batch.samples)


# ===== BALANCE =====

@pytest.mark.parametrize('method, params', [
    ('random', {}),
    ('smote', {'knn': 3}),
    ('borderline1', {'knn': 3}),
    ('borderline2', {'knn': 3}),
    ('kmeans-smote', {'k': 3, 'irt': 1.0, 'knn': 3, 'on_empty': 'smote'}),
])
def test_every_oversampler_balances_every_fixture(fixtures, method, params):
    for d in fixtures:
        balanced = OversamplerSpec(method, params).apply(d, seed=0)
        assert balanced.stats.minority_count == balanced.stats.majority_count


# ===== NOISE AVOIDANCE =====

def test_minority_outlier_never_seeds_kmeans_smote(outlier):
    planted = outlier.n_samples - 1
    for seed in SEEDS:
        batch = kmeans_smote(outlier, KmsParams(k=10, irt=1.0, knn=5, seed=seed))
        assert planted not in batch.parents


def test_minority_outlier_seeds_plain_smote(outlier):
    planted = outlier.n_samples - 1
    hits = sum(int(np.sum(smote(outlier, knn=5, seed=seed).parents == planted)) for seed in SEEDS)
    assert hits >= 1


# ===== WITHIN-CLASS REBALANCING =====

def test_sparse_cluster_receives_more_samples(two_blob):
    # average distances 3:1 and de=2 give weights 0.1 / 0.9; n = 25
    for seed in SEEDS:
        batch = kmeans_smote(two_blob, KmsParams(k=3, irt=1.0, knn=3, de='auto', seed=seed))
        by_rows = {tuple(sorted(c.minority_idx.tolist())): c for c in batch.clusters}
        dense, sparse = by_rows[(0, 1, 2, 3)], by_rows[(4, 5, 6, 7)]

        assert sparse.sampling_weight == pytest.approx(0.9)
        assert dense.sampling_weight == pytest.approx(0.1)
        assert (dense.quota, sparse.quota) == (2, 23)


# ===== METRIC ORACLES =====

def _brute_force_auprc(scores, truth):
    positives = truth.sum()
    area, previous_recall = 0.0, 0.0
    for threshold in sorted(set(scores.tolist()), reverse=True):
        predicted = scores >= threshold
        tp = np.sum(predicted & (truth == 1))
        recall = tp / positives
        precision = tp / predicted.sum()
        area += (recall - previous_recall) * precision
        previous_recall = recall
    return area


def test_auprc_matches_threshold_enumeration():
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 1000:
        n = int(rng.integers(2, 13))
        truth = rng.integers(0, 2, size=n)
        if truth.sum() in (0, n):
            continue
        # coarse scores force ties
        scores = rng.integers(0, 5, size=n) / 4.0
        assert auprc(ScoredPredictions(scores, truth)) == pytest.approx(
            _brute_force_auprc(scores, truth), abs=1e-12
        )
        checked += 1


# ===== FRIEDMAN =====

def test_friedman_value_on_identical_rankings():
    result = friedman_test(np.tile([1.0, 2.0, 3.0], (4, 1)).T)
    assert abs(result.statistic - 8.0) < 1e-12
    assert abs(result.p_value - 0.01831563888873418) < 1e-6


# ===== DESK-SCALE TREND =====

DESK_DATA = Path(os.getenv('KMS_DESK_DATA', Path(__file__).parent / 'data'))
DESK_DATASETS = ('breast_tissue', 'ecoli', 'glass', 'haberman', 'iris', 'pima', 'wine', 'vehicle')


@pytest.mark.slow
def test_desk_scale_trend():
    """
    Reduced grid over eight small benchmark sets, 5 x 5 CV.

    Needs <name>.csv for every set in DESK_DATA (label in the last column):
        KMS_DESK_DATA=data/ pytest -m slow test_acceptance.py
    """
    paths = [DESK_DATA / f"{name}.csv" for name in DESK_DATASETS]
    missing = [p.name for p in paths if not p.exists()]
    if missing:
        pytest.skip(f"benchmark CSVs not found in {DESK_DATA}: {missing}")

    datasets = [standardize(load_csv(p, one_vs_rest=True)) for p in paths]
    report = run_experiment(datasets, GridSpec.desk(), folds=5, repeats=5, seed=0,
                            jobs=os.cpu_count() or 1)

    better = [
        metric for metric in report.config['grid']['metrics']
        if report.mean_rank('knn', metric)['kmeans-smote'] <= report.mean_rank('knn', metric)['smote']
    ]
    assert len(better) >= 2, report.rank_table().to_string()
    assert any(r is not None and r.significant for r in report.friedman.values())
