"""
Tests for the command line (run in-process through cli.main)
"""

import json

import numpy as np
import pandas as pd
import pytest

from cli import main
from cli.commands import EXIT_INPUT_ERROR, EXIT_NO_MINORITY_CLUSTER, EXIT_OK
from config.run_config import ConfigError, RunConfig, load_config_file
from core.cache import ResultCache
from core.data import load_csv
from utils import OutputWriteError, read_json, write_json


def _files(directory):
    return {p.name: p.read_bytes() for p in sorted(directory.iterdir()) if p.is_file()}


# ===== OVERSAMPLE =====

def test_oversample_writes_balanced_dataset(tmp_path, blobs_csv):
    out = tmp_path / 'out'
    code = main(['oversample', str(blobs_csv), '--method', 'kmeans-smote', '--k', '1',
                 '--irt', 'inf', '--knn', '5', '--seed', '7', '-o', str(out)])
    assert code == EXIT_OK

    balanced = load_csv(out / 'balanced.csv')
    assert balanced.stats.minority_count == balanced.stats.majority_count == 80

    provenance = pd.read_csv(out / 'provenance.csv')
    assert len(provenance) == 60
    assert {'parentA', 'parentB', 'method', 'cluster'} <= set(provenance.columns)

    summary = read_json(out / 'summary.json')
    assert summary['generated'] == 60
    assert summary['config']['irt'] == 'inf'
    assert summary['clusters'][0]['quota'] == 60


def _strict_json(path):
    def reject(token):
        raise ValueError(f"non-JSON constant {token}")
    return json.loads(path.read_text(encoding='utf-8'), parse_constant=reject)


def test_summary_is_strict_json_with_infinite_irt(tmp_path, blobs_csv):
    out = tmp_path / 'out'
    assert main(['oversample', str(blobs_csv), '--method', 'kmeans-smote', '--k', '1',
                 '--irt', 'inf', '--knn', '5', '--seed', '7', '-o', str(out)]) == EXIT_OK

    summary = _strict_json(out / 'summary.json')
    assert summary['oversampler']['params']['irt'] == 'inf'


def test_write_json_rejects_non_finite_values(tmp_path):
    with pytest.raises(OutputWriteError):
        write_json({'irt': float('inf')}, tmp_path / 'bad.json')
    assert not (tmp_path / 'bad.json').exists()


def test_oversample_twice_is_byte_identical(tmp_path, blobs_csv):
    out = tmp_path / 'out'
    argv = ['oversample', str(blobs_csv), '--method', 'kmeans-smote', '--k', '1',
            '--irt', 'inf', '--knn', '5', '--seed', '7', '-o', str(out)]

    assert main(argv) == EXIT_OK
    first = _files(out)
    assert main(argv) == EXIT_OK
    assert _files(out) == first


def test_original_rows_come_first(tmp_path, blobs_csv, blobs):
    out = tmp_path / 'out'
    assert main(['oversample', str(blobs_csv), '--method', 'smote', '-o', str(out)]) == EXIT_OK

    balanced = load_csv(out / 'balanced.csv')
    np.testing.assert_array_equal(balanced.features[:blobs.n_samples], blobs.features)


def test_no_cluster_exit_code(tmp_path, blobs_csv):
    code = main(['oversample', str(blobs_csv), '--k', '2', '--irt', '0.01',
                 '-o', str(tmp_path / 'out')])
    assert code == EXIT_NO_MINORITY_CLUSTER


def test_missing_input_exit_code(tmp_path):
    assert main(['oversample', str(tmp_path / 'missing.csv')]) == EXIT_INPUT_ERROR


def test_bad_literal_is_a_usage_error(blobs_csv):
    with pytest.raises(SystemExit) as info:
        main(['oversample', str(blobs_csv), '--irt', 'never'])
    assert info.value.code == 2


def test_unparsable_dataset_exit_code(tmp_path):
    path = tmp_path / 'bad.csv'
    path.write_text("a,label\n1,0\nx,1\n2,0\n", encoding='utf-8')
    assert main(['oversample', str(path), '-o', str(tmp_path / 'out')]) == EXIT_INPUT_ERROR


# ===== EVALUATE / RANK =====

def test_evaluate_then_rank(tmp_path, blobs_csv):
    out = tmp_path / 'eval'
    code = main(['evaluate', str(blobs_csv), '--methods', 'random,smote',
                 '--classifiers', 'knn', '--metrics', 'g_mean,auprc',
                 '--folds', '2', '--repeats', '2', '--seed', '3', '-o', str(out)])
    assert code == EXIT_OK
    for name in ('report.json', 'cells.csv', 'scores.csv', 'ranks.csv', 'gains.csv', 'cells.sqlite'):
        assert (out / name).exists()

    report = _strict_json(out / 'report.json')
    # none + random + three smote points, 2 folds x 2 repeats
    assert report['tasks']['counts']['success'] == 5 * 2 * 2

    ranked = tmp_path / 'ranked'
    assert main(['rank', str(out / 'scores.csv'), '-o', str(ranked)]) == EXIT_OK
    ranks = pd.read_csv(ranked / 'ranks.csv')
    assert set(ranks['method']) == {'none', 'random', 'smote'}
    assert (ranked / 'friedman.json').exists()


def test_evaluate_rerun_uses_cache_and_matches(tmp_path, blobs_csv):
    out = tmp_path / 'eval'
    argv = ['evaluate', str(blobs_csv), '--methods', 'smote', '--classifiers', 'logreg',
            '--metrics', 'f1', '--folds', '2', '--repeats', '1', '-o', str(out)]

    assert main(argv) == EXIT_OK
    first = {k: v for k, v in _files(out).items() if k.endswith(('.csv', '.json'))}
    assert main(argv) == EXIT_OK
    second = {k: v for k, v in _files(out).items() if k.endswith(('.csv', '.json'))}
    assert first == second


def test_clear_cache_flag_empties_the_store(tmp_path, blobs_csv):
    out = tmp_path / 'eval'
    argv = ['evaluate', str(blobs_csv), '--methods', 'smote', '--classifiers', 'logreg',
            '--metrics', 'f1', '--folds', '2', '--repeats', '1', '-o', str(out)]
    assert main(argv) == EXIT_OK
    first = {k: v for k, v in _files(out).items() if k.endswith(('.csv', '.json'))}
    tasks = len(ResultCache.in_directory(out))

    ResultCache.in_directory(out).put('stale', {'status': 'success'})
    assert main(argv + ['--clear-cache']) == EXIT_OK

    cache = ResultCache.in_directory(out)
    assert cache.get('stale') is None
    assert len(cache) == tasks
    second = {k: v for k, v in _files(out).items() if k.endswith(('.csv', '.json'))}
    assert second['scores.csv'] == first['scores.csv']

    assert main(argv + ['--clear-cache', '--no-cache']) == EXIT_INPUT_ERROR


# ===== VARIANTS =====

def test_variants_command(tmp_path, blobs_csv):
    out = tmp_path / 'variants'
    assert main(['variants', str(blobs_csv), '--factors', '2,4', '-o', str(out)]) == EXIT_OK

    summary = read_json(out / 'variants.json')
    written = summary['datasets'][0]['variants']
    skipped = summary['datasets'][0]['skipped']
    assert [v['factor'] for v in written] == [2.0]
    assert [s['factor'] for s in skipped] == [4.0]
    assert load_csv(out / 'blobs_us2.csv').stats.minority_count == 10


# ===== CONFIG =====

def test_flags_override_config_file(tmp_path, blobs_csv):
    cfg_file = tmp_path / 'run.cfg'
    cfg_file.write_text(f"inputs = {blobs_csv}\nmethod = smote\nknn = 3\nseed = 11\n")

    cfg = RunConfig.from_sources('oversample', {'knn': 7}, cfg_file)
    assert cfg.method == 'smote'
    assert cfg.knn == 7
    assert cfg.seed == 11
    assert cfg.inputs == [str(blobs_csv)]


def test_config_file_supplies_inputs_to_main(tmp_path, blobs_csv):
    cfg_file = tmp_path / 'run.cfg'
    out = tmp_path / 'out'
    cfg_file.write_text(f"inputs = {blobs_csv}\nmethod = random\noutput = {out}\n")

    assert main(['oversample', '--config', str(cfg_file)]) == EXIT_OK
    assert (out / 'balanced.csv').exists()


def test_config_literals_and_errors(tmp_path):
    cfg_file = tmp_path / 'run.cfg'
    cfg_file.write_text("IRT = inf\nknn = all\nDE = auto\non-empty = smote\n")
    values = load_config_file(cfg_file)
    assert values == {'irt': 'inf', 'knn': 'all', 'de': 'auto', 'on_empty': 'smote'}

    with pytest.raises(ConfigError):
        RunConfig.from_sources('oversample', {'inputs': [str(cfg_file)], 'colour': 'red'})
    with pytest.raises(ConfigError):
        RunConfig.from_sources('oversample', {'inputs': [str(cfg_file)], 'k': 0})
