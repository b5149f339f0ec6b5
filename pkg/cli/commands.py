"""
CLI commands
oversample / evaluate / rank / variants, each taking a validated RunConfig
and returning a process exit code
"""

from typing import Dict, List

import pandas as pd

from config.run_config import RunConfig
from utils import get_logger, write_frame, write_json
from core.data import Dataset, load_csv, save_csv, standardize, undersampled_variants
from core.oversamplers import OversamplerSpec
from core.cache import ResultCache
from core.managers.experiment_manager import (
    GridSpec,
    STATUS_SUCCESS,
    rank_scores_frame,
    score_gains,
    run_experiment,
)
from core.ranking import ranking_table

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_NO_MINORITY_CLUSTER = 3
EXIT_INTERNAL = 4


def _load_datasets(cfg: RunConfig) -> List[Dataset]:
    datasets = []
    for path in cfg.inputs:
        d = load_csv(
            path,
            label_column=cfg.label_column,
            minority_label=cfg.minority_label,
            one_vs_rest=cfg.one_vs_rest,
        )
        if cfg.scale:
            d = standardize(d)
        logger.info(f"Loaded {d!r}")
        datasets.append(d)
    return datasets


# ===== OVERSAMPLE =====

def cmd_oversample(cfg: RunConfig) -> int:
    """
    Balance one dataset

    Writes balanced.csv (original rows then synthetic rows), provenance.csv
    (synthetic rows with their parents) and summary.json. parentA and
    parentB are 0-based data rows of the input CSV (header excluded), so they
    index balanced.csv as well.
    """
    if len(cfg.inputs) != 1:
        raise ValueError(f"oversample takes exactly one input, got {len(cfg.inputs)}")
    d = _load_datasets(cfg)[0]

    spec = OversamplerSpec(cfg.method, cfg.oversampler_params())
    batch = spec.resample(d, seed=cfg.seed)
    balanced = d.append_batch(batch)

    out = cfg.output_dir
    save_csv(balanced, out / 'balanced.csv')
    write_frame(batch.to_frame(d.column_names), out / 'provenance.csv')
    write_json({
        'config': cfg.to_dict(),
        'oversampler': spec.to_dict(),
        'input': d.describe(),
        'output': balanced.describe(),
        'generated': len(batch),
        'clusters': [cluster.to_dict() for cluster in batch.clusters],
        'warnings': list(batch.warnings),
    }, out / 'summary.json')

    stats = balanced.stats
    print(f"{d.name}: generated {len(batch)} sample(s) with {spec.label}; "
          f"minority={stats.minority_count}, majority={stats.majority_count} -> {out}")
    return EXIT_OK


# ===== EVALUATE =====

def _grid(cfg: RunConfig) -> GridSpec:
    grid = GridSpec.full() if cfg.grid == 'full' else GridSpec.desk()
    return grid.restrict(
        methods=cfg.methods or None,
        classifiers=cfg.classifiers or None,
        metrics=cfg.metrics or None,
    )


def cmd_evaluate(cfg: RunConfig) -> int:
    """
    Run the cross-validated comparison and write the report files

    Exit code is nonzero only when no task succeeded.
    """
    datasets = _load_datasets(cfg)
    if cfg.with_variants:
        extra = []
        for d in datasets:
            variants, _ = undersampled_variants(d, cfg.factors, seed=cfg.seed)
            extra.extend(variant for _, variant in variants)
        datasets.extend(extra)

    grid = _grid(cfg)
    cache = ResultCache.in_directory(cfg.output_dir) if cfg.cache else None
    if cache is not None and cfg.clear_cache:
        cache.clear()

    def progress(done: int, total: int, status: str, message: str):
        if status in ('done', 'error') or done % 100 == 0:
            logger.info(f"[{done}/{total}] {status}: {message}")

    report = run_experiment(
        datasets,
        grid,
        folds=cfg.folds,
        repeats=cfg.repeats,
        seed=cfg.seed,
        jobs=cfg.jobs,
        cache=cache,
        progress_callback=progress,
    )
    report.config['run'] = cfg.to_dict()
    report.write(cfg.output_dir)

    table = report.rank_table()
    if not table.empty:
        print(table.to_string(float_format=lambda v: f"{v:.3f}"))
    for (clf, metric), result in sorted(report.friedman.items()):
        if result is not None:
            print(f"Friedman {clf}/{metric}: statistic={result.statistic:.4f} "
                  f"p={result.p_value:.4g} significant={result.significant}")

    _, gain_summary = report.gains()
    for row in gain_summary.itertuples(index=False):
        print(f"Gain over SMOTE {row.classifier}/{row.metric}: mean={row.mean_gain:+.4f} "
              f"max={row.max_gain:+.4f} improved={row.improved}/{row.datasets}")

    counts = report.tasks['counts']
    print(f"Tasks: {counts} -> {cfg.output_dir}")
    if counts[STATUS_SUCCESS] == 0:
        logger.error("Every task failed")
        return EXIT_INTERNAL
    return EXIT_OK


# ===== RANK =====

def cmd_rank(cfg: RunConfig) -> int:
    """
    Mean ranks and Friedman tests from one or more score tables

    Accepts the scores.csv written by evaluate (``mean`` column) or any CSV
    with columns dataset, classifier, metric, method, score [, repeat].
    """
    frames = []
    for path in cfg.inputs:
        frame = pd.read_csv(path)
        if 'score' not in frame.columns and 'mean' in frame.columns:
            frame = frame.rename(columns={'mean': 'score'})
        frames.append(frame)
    scores = pd.concat(frames, ignore_index=True)

    mean_ranks, friedman = rank_scores_frame(scores)
    series: Dict[str, pd.Series] = {
        f"{clf}/{metric}": group.set_index('method')['mean_rank']
        for (clf, metric), group in mean_ranks.groupby(['classifier', 'metric'], sort=True)
    }
    table = ranking_table(series)

    out = cfg.output_dir
    write_frame(table.reset_index(), out / 'ranks.csv')
    gains, _ = score_gains(scores)
    write_frame(gains, out / 'gains.csv')
    write_json({
        'config': cfg.to_dict(),
        'friedman': [
            {'classifier': clf, 'metric': metric,
             **(r.to_dict() if r is not None else {'statistic': None})}
            for (clf, metric), r in sorted(friedman.items())
        ],
    }, out / 'friedman.json')

    print(table.to_string(float_format=lambda v: f"{v:.3f}"))
    return EXIT_OK


# ===== VARIANTS =====

def cmd_variants(cfg: RunConfig) -> int:
    """Write one CSV per admissible undersampling factor plus variants.json"""
    out = cfg.output_dir
    summary = []
    for d in _load_datasets(cfg):
        variants, skipped = undersampled_variants(d, cfg.factors, seed=cfg.seed)
        written = []
        for factor, variant in variants:
            path = save_csv(variant, out / f"{variant.name}.csv")
            written.append({'factor': factor, 'path': path.name, **variant.describe()})
        summary.append({'dataset': d.describe(), 'variants': written, 'skipped': skipped})
        print(f"{d.name}: {len(written)} variant(s) written, {len(skipped)} skipped")

    write_json({'config': cfg.to_dict(), 'datasets': summary}, out / 'variants.json')
    return EXIT_OK


COMMANDS = {
    'oversample': cmd_oversample,
    'evaluate': cmd_evaluate,
    'rank': cmd_rank,
    'variants': cmd_variants,
}


__all__ = [
    'EXIT_OK',
    'EXIT_INPUT_ERROR',
    'EXIT_NO_MINORITY_CLUSTER',
    'EXIT_INTERNAL',
    'COMMANDS',
    'cmd_oversample',
    'cmd_evaluate',
    'cmd_rank',
    'cmd_variants',
]
