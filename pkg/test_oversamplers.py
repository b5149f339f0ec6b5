"""
Tests for the shared kernels, random oversampling, SMOTE, borderline-SMOTE
and the oversampler registry
"""

import numpy as np
import pytest
from scipy.stats import chisquare

from core.oversamplers import (
    ALL,
    DANGER,
    NOISE,
    SAFE,
    InsufficientMinorityError,
    InvalidParameterError,
    OversamplerSpec,
    borderline_smote,
    classify_minority,
    interpolate,
    knn_table,
    random_oversample,
    smote,
)
from core.data import Dataset


# ===== KERNELS =====

def test_interpolate_endpoints_and_midpoints():
    a, b = np.array([1.0, -1.0]), np.array([4.0, 5.0])

    np.testing.assert_array_equal(interpolate(a, b, 0.0), a)
    np.testing.assert_array_equal(interpolate(a, b, 1.0), b)
    np.testing.assert_allclose(interpolate(a, b, 1 / 3), [2.0, 1.0])


def test_interpolate_rejects_bad_input():
    with pytest.raises(ValueError):
        interpolate([0.0], [1.0, 2.0], 0.5)
    with pytest.raises(ValueError):
        interpolate([0.0], [1.0], 1.5)


def test_knn_table_on_collinear_points():
    points = np.array([[0.0], [1.0], [3.0]])
    table = knn_table(points, knn=2)

    assert table.indices[0].tolist() == [1, 2]
    assert table.distances[0].tolist() == [1.0, 3.0]
    # query excluded from its own list
    assert 1 not in table.indices[1].tolist()


def test_knn_table_ties_go_to_lower_index():
    points = np.array([[0.0], [-1.0], [1.0], [2.0]])
    table = knn_table(points, knn=2)
    assert table.indices[0].tolist() == [1, 2]


def test_knn_table_clamps_all():
    points = np.arange(5, dtype=np.float64).reshape(-1, 1)
    assert knn_table(points, knn=ALL).knn == 4
    assert knn_table(points, knn=50).knn == 4


# ===== RANDOM OVERSAMPLING =====

def test_random_oversample_copies_minority_rows(blobs):
    batch = random_oversample(blobs, seed=3)

    assert len(batch) == 60
    np.testing.assert_array_equal(batch.parents[:, 0], batch.parents[:, 1])
    np.testing.assert_array_equal(batch.samples, blobs.features[batch.parents[:, 0]])
    assert np.all(blobs.labels[batch.parents[:, 0]] == 1)


# ===== SMOTE =====

def test_smote_samples_lie_on_minority_segments(blobs):
    batch = smote(blobs, knn=5, seed=1)

    a = blobs.features[batch.parents[:, 0]]
    b = blobs.features[batch.parents[:, 1]]
    assert np.all(blobs.labels[batch.parents.ravel()] == 1)
    assert np.all(batch.parents[:, 0] != batch.parents[:, 1])

    # collinear with the parents and between them
    diff = b - a
    w = np.einsum('ij,ij->i', batch.samples - a, diff) / np.einsum('ij,ij->i', diff, diff)
    assert np.all((w >= 0) & (w <= 1))
    np.testing.assert_allclose(a + w[:, None] * diff, batch.samples, atol=1e-9)


def test_smote_parent_is_among_base_neighbours(blobs):
    batch = smote(blobs, knn=3, seed=4)
    minority = blobs.minority_indices
    table = knn_table(blobs.features[minority], knn=3)
    position = {int(row): i for i, row in enumerate(minority)}

    for base, other in batch.parents:
        assert position[int(other)] in table.indices[position[int(base)]]


def test_smote_parent_pairs_are_uniform():
    # six minority rows on a line without distance ties: each has two fixed
    # nearest neighbours, so the twelve (a, b) pairs are equally likely
    minority = np.array([0.0, 1.0, 3.0, 7.0, 14.0, 30.0])
    majority = 100.0 + np.arange(10.0)
    d = Dataset(features=np.r_[minority, majority].reshape(-1, 1),
                labels=np.array([1] * 6 + [0] * 10))
    batch = smote(d, n=12000, knn=2, seed=21)

    table = knn_table(d.features[:6], knn=2)
    pairs = {(a, int(b)): 0 for a in range(6) for b in table.indices[a]}
    for a, b in batch.parents.tolist():
        pairs[(a, b)] += 1

    counts = np.array(list(pairs.values()))
    assert len(counts) == 12
    assert chisquare(counts).pvalue > 1e-3


def test_minority_parents_index_the_minority_set(blobs):
    batch = smote(blobs, knn=5, seed=3)
    positions = batch.minority_parents(blobs.minority_indices)

    assert positions.shape == batch.parents.shape
    assert np.all(positions >= 0)
    np.testing.assert_array_equal(blobs.minority_indices[positions], batch.parents)


def test_minority_parents_marks_majority_endpoints(blobs):
    batch = borderline_smote(blobs, knn=5, variant=2, seed=1)
    positions = batch.minority_parents(blobs.minority_indices)

    from_majority = blobs.labels[batch.parents[:, 1]] == 0
    assert np.all(positions[from_majority, 1] == -1)
    assert np.all(positions[~from_majority] >= 0)



def test_smote_knn_zero_degenerates_to_copies(blobs):
    batch = smote(blobs, knn=0, seed=2)
    np.testing.assert_array_equal(batch.samples, blobs.features[batch.parents[:, 0]])


def test_smote_is_deterministic(blobs):
    a, b = smote(blobs, seed=9), smote(blobs, seed=9)
    np.testing.assert_array_equal(a.samples, b.samples)
    np.testing.assert_array_equal(a.parents, b.parents)
    assert not np.array_equal(a.samples, smote(blobs, seed=10).samples)


def test_smote_needs_two_minority_rows():
    d = Dataset(features=np.arange(4.0).reshape(-1, 1), labels=np.array([1, 0, 0, 0]))
    with pytest.raises(InsufficientMinorityError):
        smote(d, knn=5)
    assert len(smote(d, knn=0)) == 2


def test_explicit_n(blobs):
    assert len(smote(blobs, n=7, seed=0)) == 7
    assert len(smote(blobs, n=0, seed=0)) == 0
    with pytest.raises(InvalidParameterError):
        smote(blobs, n=-1)


# ===== BORDERLINE-SMOTE =====

def test_minority_row_among_majority_is_noise(outlier):
    kinds = classify_minority(outlier, m_neighbors=5)

    assert kinds[-1] == NOISE
    assert set(kinds[:-1]) <= {SAFE, DANGER}


def test_borderline_only_seeds_danger_rows(blobs):
    kinds = classify_minority(blobs, m_neighbors=5)
    danger = set(blobs.minority_indices[kinds == DANGER].tolist())
    noise = set(blobs.minority_indices[kinds == NOISE].tolist())
    assert danger, "fixture needs borderline rows"

    batch = borderline_smote(blobs, knn=5, variant=1, seed=0)
    assert set(batch.parents[:, 0].tolist()) <= danger
    assert not set(batch.parents[:, 1].tolist()) & noise
    assert np.all(blobs.labels[batch.parents[:, 1]] == 1)


def test_borderline2_weights_majority_neighbours_below_half(blobs):
    batch = borderline_smote(blobs, knn=5, variant=2, seed=3)

    majority_parent = blobs.labels[batch.parents[:, 1]] == 0
    assert majority_parent.any()
    a = blobs.features[batch.parents[majority_parent, 0]]
    b = blobs.features[batch.parents[majority_parent, 1]]
    distance_to_a = np.linalg.norm(batch.samples[majority_parent] - a, axis=1)
    assert np.all(distance_to_a <= 0.5 * np.linalg.norm(b - a, axis=1) + 1e-12)


def test_borderline_falls_back_to_smote_without_danger(two_blob):
    batch = borderline_smote(two_blob, knn=3, seed=0)

    assert batch.method == 'borderline1'
    assert any('falling back to SMOTE' in w for w in batch.warnings)
    assert len(batch) == 25


# ===== REGISTRY =====

def test_oversampler_label_is_stable():
    spec = OversamplerSpec('kmeans-smote', {'knn': 5, 'k': 2, 'irt': 1.0, 'de': 'auto'})
    assert spec.label == 'kmeans-smote(de=auto,irt=1.0,k=2,knn=5)'
    assert OversamplerSpec('random').label == 'random'


def test_oversampler_rejects_unknown_method_and_params():
    with pytest.raises(InvalidParameterError):
        OversamplerSpec('adasyn')
    with pytest.raises(InvalidParameterError):
        OversamplerSpec('smote', {'k': 3})
    with pytest.raises(InvalidParameterError):
        OversamplerSpec('kmeans-smote', {'irt': 0.0})


def test_none_oversampler_leaves_dataset_unchanged(blobs):
    assert OversamplerSpec('none').apply(blobs) is blobs


@pytest.mark.parametrize('method, params', [
    ('random', {}),
    ('smote', {'knn': 5}),
    ('borderline1', {'knn': 5}),
    ('borderline2', {'knn': 5}),
    ('kmeans-smote', {'k': 2, 'knn': 5, 'irt': 1.0, 'on_empty': 'smote'}),
])
def test_apply_balances_classes(blobs, method, params):
    balanced = OversamplerSpec(method, params).apply(blobs, seed=0)

    assert balanced.stats.minority_count == balanced.stats.majority_count
    assert balanced.stats.imbalance_ratio == 1.0
    np.testing.assert_array_equal(balanced.features[:blobs.n_samples], blobs.features)
