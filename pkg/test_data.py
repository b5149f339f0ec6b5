"""
Tests for dataset loading, folding and derived datasets
"""

import numpy as np
import pytest

from core.data import (
    CSVParseError,
    Dataset,
    DatasetError,
    FoldError,
    LabelError,
    load_csv,
    make_blobs,
    make_undersampled_variant,
    save_csv,
    standardize,
    stratified_kfold,
    undersampled_variants,
)


def _write(path, text):
    path.write_text(text, encoding='utf-8')
    return path


# ===== LOADING =====

def test_load_csv_maps_least_frequent_label_to_minority(tmp_path):
    path = _write(tmp_path / 'toy.csv', "a,b,label\n1,2,no\n3,4,no\n5,6,yes\n7,8,no\n")
    d = load_csv(path)

    assert d.name == 'toy'
    assert d.feature_names == ('a', 'b')
    assert d.labels.tolist() == [0, 0, 1, 0]
    assert d.label_values == ('no', 'yes')
    assert d.stats.minority_count == 1
    assert d.stats.imbalance_ratio == 3.0


def test_load_csv_label_column_by_name(tmp_path):
    path = _write(tmp_path / 'toy.csv', "cls,x\nb,1\na,2\na,3\n")
    d = load_csv(path, label_column='cls')

    assert d.feature_names == ('x',)
    np.testing.assert_array_equal(d.features[:, 0], [1.0, 2.0, 3.0])
    assert d.labels.tolist() == [1, 0, 0]


def test_unparsable_cell_reports_row_and_column(tmp_path):
    path = _write(tmp_path / 'bad.csv', "a,b,label\n1,2,0\n3,oops,1\n5,6,0\n")

    with pytest.raises(CSVParseError) as info:
        load_csv(path)
    assert info.value.row == 3
    assert info.value.column == 'b'
    assert info.value.value == 'oops'


def test_single_class_is_rejected(tmp_path):
    path = _write(tmp_path / 'one.csv', "a,label\n1,x\n2,x\n")
    with pytest.raises(LabelError):
        load_csv(path)


def test_multiclass_needs_one_vs_rest(tmp_path):
    path = _write(tmp_path / 'multi.csv', "a,label\n1,x\n2,x\n3,y\n4,y\n5,z\n6,x\n")
    with pytest.raises(LabelError):
        load_csv(path)

    d = load_csv(path, one_vs_rest=True)
    assert d.label_values == ('not_z', 'z')
    assert d.stats.minority_count == 1
    assert d.stats.majority_count == 5


def test_missing_file_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_csv(tmp_path / 'nope.csv')


def test_save_then_load_is_bit_exact(tmp_path, blobs):
    path = save_csv(blobs, tmp_path / 'blobs.csv')
    again = load_csv(path, name=blobs.name)

    assert again.equals(blobs)


# ===== DATASET =====

def test_dataset_rejects_bad_shapes():
    with pytest.raises(DatasetError):
        Dataset(features=np.zeros((3, 2)), labels=np.array([0, 1]))
    with pytest.raises(DatasetError):
        Dataset(features=np.array([[np.nan], [1.0]]), labels=np.array([0, 1]))
    with pytest.raises(LabelError):
        Dataset(features=np.zeros((3, 1)), labels=np.array([1, 1, 0]))


def test_dataset_is_immutable(blobs):
    with pytest.raises(ValueError):
        blobs.features[0, 0] = 99.0


# ===== FOLDS =====

def test_folds_hold_exact_class_shares():
    d = make_blobs(20, 80, 2, 2.0, seed=0)
    plan = stratified_kfold(d, k=5, repeats=1, seed=3)

    for _, _, train, test in plan:
        assert int(d.labels[test].sum()) == 4
        assert int((d.labels[test] == 0).sum()) == 16
        assert np.intersect1d(train, test).size == 0


def test_fold_minority_counts_floor_and_ceil():
    d = make_blobs(52, 60, 2, 2.0, seed=0)
    plan = stratified_kfold(d, k=5, repeats=1, seed=3)

    counts = sorted(int(d.labels[test].sum()) for _, _, _, test in plan)
    assert counts == [10, 10, 10, 11, 11]


def test_every_index_tested_once_per_repeat(blobs):
    plan = stratified_kfold(blobs, k=4, repeats=3, seed=9)
    assert len(plan) == 12

    for repeat in range(3):
        tested = np.concatenate([test for _, test in plan.repeat_folds(repeat)])
        np.testing.assert_array_equal(np.sort(tested), np.arange(blobs.n_samples))


def test_repeats_reshuffle(blobs):
    plan = stratified_kfold(blobs, k=5, repeats=2, seed=0)
    first = plan.repeat_folds(0)[0][1]
    second = plan.repeat_folds(1)[0][1]
    assert not np.array_equal(first, second)


def test_fold_errors(blobs):
    with pytest.raises(FoldError):
        stratified_kfold(blobs, k=1)
    with pytest.raises(FoldError):
        stratified_kfold(blobs, k=21)


# ===== DERIVED DATASETS =====

def test_make_blobs_is_deterministic():
    assert make_blobs(10, 30, 3, 2.0, seed=4).equals(make_blobs(10, 30, 3, 2.0, seed=4))
    assert not make_blobs(10, 30, 3, 2.0, seed=4).equals(make_blobs(10, 30, 3, 2.0, seed=5))


def test_undersampled_variant_keeps_majority(blobs):
    variant = make_undersampled_variant(blobs, 2, seed=0)

    assert variant.stats.minority_count == 10
    assert variant.stats.majority_count == 80
    assert variant.name == 'blobs_20_80_2_us2'


def test_undersampled_variants_skip_small_minorities():
    d = make_blobs(40, 100, 2, 2.0, seed=0)
    variants, skipped = undersampled_variants(d, factors=[2, 4, 10], seed=1)

    assert [factor for factor, _ in variants] == [2, 4]
    assert [v.stats.minority_count for _, v in variants] == [20, 10]
    assert [s['factor'] for s in skipped] == [10]
    assert 'minority' in skipped[0]['reason']


def test_standardize_centres_features(blobs):
    z = standardize(blobs)
    np.testing.assert_allclose(z.features.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(z.features.std(axis=0), 1.0)
