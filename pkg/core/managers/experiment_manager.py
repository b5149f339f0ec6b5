"""
Experiment Manager
Repeated stratified cross-validation with in-fold oversampling, grid search
over oversampler x classifier hyperparameters, best-over-grid aggregation,
mean ranking and Friedman tests
"""

import hashlib
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config import settings
from utils import get_logger, LoggerContext, substream_seed, write_frame, write_json
from core.data import Dataset, DatasetError, stratified_kfold
from core.metrics import METRICS, MetricError, ScoredPredictions, score_all
from core.classifiers import ClassifierSpec
from core.oversamplers import ALL, AUTO, OversamplerSpec
from core.ranking import FriedmanResult, friedman_test, mean_ranking, rank_matrix, ranking_table
from core.cache import ResultCache

logger = get_logger(__name__)

STATUS_SUCCESS = 'success'
STATUS_ERROR = 'error'
STATUS_SKIPPED = 'skipped'

ProgressCallback = Callable[[int, int, str, str], None]


# ===== GRID =====

def _kmeans_smote_grid(ks: Sequence[int]) -> List[OversamplerSpec]:
    return [
        OversamplerSpec('kmeans-smote', {'k': k, 'knn': knn, 'irt': irt, 'de': de})
        for k, knn, irt, de in itertools.product(
            ks, [3, 5, 20, ALL], [1.0, float('inf')], [0.0, 2.0, AUTO]
        )
    ]


@dataclass(frozen=True)
class GridSpec:
    """
    Oversampler and classifier grids plus the metrics to report

    Attributes:
        oversamplers: method -> hyperparameter points (the method is the
            unit that gets ranked; the best point is kept)
        classifiers: classifier name -> hyperparameter points
        metrics: metric names from core.metrics.METRICS
    """
    oversamplers: Dict[str, Tuple[OversamplerSpec, ...]]
    classifiers: Dict[str, Tuple[ClassifierSpec, ...]]
    metrics: Tuple[str, ...] = tuple(settings.DEFAULT_METRICS)

    def __post_init__(self):
        oversamplers = {m: tuple(specs) for m, specs in self.oversamplers.items()}
        classifiers = {c: tuple(specs) for c, specs in self.classifiers.items()}
        if 'none' not in oversamplers:
            oversamplers = {'none': (OversamplerSpec('none'),), **oversamplers}
        for method, specs in oversamplers.items():
            if not specs:
                raise ValueError(f"oversampler grid for {method!r} is empty")
            if any(spec.method != method for spec in specs):
                raise ValueError(f"grid for {method!r} holds specs of another method")
        if not classifiers or any(not specs for specs in classifiers.values()):
            raise ValueError("every classifier grid must be non-empty")
        for name, specs in classifiers.items():
            if any(spec.name != name for spec in specs):
                raise ValueError(f"grid for {name!r} holds specs of another classifier")
        if not self.metrics:
            raise ValueError("at least one metric is required")
        unknown = [m for m in self.metrics if m not in METRICS]
        if unknown:
            raise MetricError(f"Unknown metric(s) {unknown}")
        object.__setattr__(self, 'oversamplers', oversamplers)
        object.__setattr__(self, 'classifiers', classifiers)
        object.__setattr__(self, 'metrics', tuple(self.metrics))

    @classmethod
    def full(cls, kmeans_ks: Sequence[int] = (2, 20, 50, 100, 250, 500), **kwargs) -> 'GridSpec':
        """The full comparison grid"""
        smote_knn = [3, 5, 20]
        return cls(
            oversamplers={
                'none': (OversamplerSpec('none'),),
                'random': (OversamplerSpec('random'),),
                'smote': tuple(OversamplerSpec('smote', {'knn': k}) for k in smote_knn),
                'borderline1': tuple(OversamplerSpec('borderline1', {'knn': k}) for k in smote_knn),
                'borderline2': tuple(OversamplerSpec('borderline2', {'knn': k}) for k in smote_knn),
                'kmeans-smote': tuple(_kmeans_smote_grid(kmeans_ks)),
            },
            classifiers={
                'knn': tuple(ClassifierSpec('knn', {'k': k}) for k in (3, 5, 8)),
                'logreg': (ClassifierSpec('logreg'),),
            },
            **kwargs
        )

    @classmethod
    def desk(cls, **kwargs) -> 'GridSpec':
        """The full grid with k-means SMOTE restricted to k in {2, 20, 50}"""
        return cls.full(kmeans_ks=(2, 20, 50), **kwargs)

    def restrict(
        self,
        methods: Optional[Iterable[str]] = None,
        classifiers: Optional[Iterable[str]] = None,
        metrics: Optional[Iterable[str]] = None,
    ) -> 'GridSpec':
        """A copy keeping only the named methods / classifiers / metrics"""
        def pick(grid, names):
            if names is None:
                return grid
            names = list(names)
            missing = [n for n in names if n not in grid]
            if missing:
                raise ValueError(f"not in grid: {missing}")
            return {n: grid[n] for n in names}

        return GridSpec(
            oversamplers=pick(self.oversamplers, methods),
            classifiers=pick(self.classifiers, classifiers),
            metrics=tuple(metrics) if metrics is not None else self.metrics,
        )

    @property
    def n_combinations(self) -> int:
        n_over = sum(len(specs) for specs in self.oversamplers.values())
        n_clf = sum(len(specs) for specs in self.classifiers.values())
        return n_over * n_clf

    def to_dict(self) -> Dict[str, Any]:
        return {
            'oversamplers': {m: [s.label for s in specs] for m, specs in self.oversamplers.items()},
            'classifiers': {c: [s.label for s in specs] for c, specs in self.classifiers.items()},
            'metrics': list(self.metrics),
        }


# ===== TASKS =====

@dataclass(frozen=True)
class _Task:
    dataset: Dataset
    spec: OversamplerSpec
    repeat: int
    fold: int
    train: np.ndarray
    test: np.ndarray
    classifiers: Tuple[ClassifierSpec, ...]
    metrics: Tuple[str, ...]
    seed: int
    key: str


def dataset_fingerprint(d: Dataset) -> str:
    digest = hashlib.blake2b(digest_size=8)
    digest.update(d.features.tobytes())
    digest.update(d.labels.tobytes())
    return digest.hexdigest()


def _task_key(fingerprint: str, task_parts: Tuple) -> str:
    text = '|'.join(str(p) for p in (fingerprint,) + task_parts)
    return hashlib.blake2b(text.encode('utf-8'), digest_size=16).hexdigest()


def run_task(task: _Task) -> Dict[str, Any]:
    """
    Oversample the training split, fit every classifier, score the test split

    Returns:
        {'status': 'success' | 'error' | 'skipped', 'scores': {classifier
        label: {metric: value}}, 'errors': {classifier label: message}, ...}
    """
    result = {
        'status': STATUS_SUCCESS,
        'dataset': task.dataset.name,
        'method': task.spec.method,
        'oversampler': task.spec.label,
        'repeat': task.repeat,
        'fold': task.fold,
        'scores': {},
        'errors': {},
        'warnings': [],
    }

    train = task.dataset.subset(task.train)
    test = task.dataset.subset(task.test)

    k = task.spec.params.get('k')
    if task.spec.method == 'kmeans-smote' and k is not None and k > train.n_samples:
        result['status'] = STATUS_SKIPPED
        result['reason'] = f"k={k} exceeds {train.n_samples} training instances"
        return result

    try:
        oversample_seed = substream_seed(task.seed, task.dataset.name, task.repeat, task.fold,
                                         'oversample', task.spec.label)
        batch = task.spec.resample(train, seed=oversample_seed)
        balanced = train.append_batch(batch)
        result['warnings'] = list(batch.warnings)
    except Exception as e:
        result['status'] = STATUS_ERROR
        result['error'] = f"{type(e).__name__}: {e}"
        return result

    for clf in task.classifiers:
        try:
            model = clf.fit(balanced, seed=substream_seed(
                task.seed, task.dataset.name, task.repeat, task.fold, 'classifier', clf.label
            ))
            scored = ScoredPredictions(model.predict_scores(test.features), test.labels)
            result['scores'][clf.label] = score_all(scored, task.metrics)
        except Exception as e:
            result['errors'][clf.label] = f"{type(e).__name__}: {e}"

    if result['errors'] and not result['scores']:
        result['status'] = STATUS_ERROR
        result['error'] = next(iter(result['errors'].values()))
    return result


def _build_tasks(
    datasets: Sequence[Dataset],
    grid: GridSpec,
    folds: int,
    repeats: int,
    seed: int,
) -> Tuple[List[_Task], List[Dict[str, Any]]]:
    classifiers = tuple(itertools.chain.from_iterable(grid.classifiers.values()))
    specs = list(itertools.chain.from_iterable(grid.oversamplers.values()))

    tasks, failures = [], []
    for d in datasets:
        try:
            plan = stratified_kfold(d, folds, repeats, seed=substream_seed(seed, 'folds', d.name))
        except DatasetError as e:
            logger.error(f"{d.name}: cannot build folds: {e}")
            failures.append({'dataset': d.name, 'status': STATUS_ERROR, 'error': str(e)})
            continue

        fingerprint = dataset_fingerprint(d)
        clf_labels = ','.join(c.label for c in classifiers)
        for spec in specs:
            for repeat, fold, train, test in plan:
                key = _task_key(fingerprint, (d.name, seed, folds, repeats, spec.label,
                                              repeat, fold, clf_labels, ','.join(grid.metrics)))
                tasks.append(_Task(
                    dataset=d, spec=spec, repeat=repeat, fold=fold,
                    train=train, test=test, classifiers=classifiers,
                    metrics=grid.metrics, seed=seed, key=key,
                ))
    return tasks, failures


# ===== REPORT =====

CELL_COLUMNS = [
    'dataset', 'method', 'oversampler', 'classifier', 'classifier_params',
    'metric', 'repeat', 'fold', 'score',
]


@dataclass(eq=False)
class EvalReport:
    """
    Results of run_experiment

    Attributes:
        cells: one row per (dataset, oversampler point, classifier point,
            metric, repeat, fold) with the test-split score
        scores: best-over-grid mean and std per (dataset, classifier,
            metric, method)
        block_scores: per (dataset, repeat) score of every method's best point
        mean_ranks: mean rank per (classifier, metric, method)
        friedman: (classifier, metric) -> FriedmanResult (None when fewer than
            three methods or two blocks)
        tasks: task status counts and failure records
        config: run parameters echoed for audit
    """
    cells: pd.DataFrame
    scores: pd.DataFrame
    block_scores: pd.DataFrame
    mean_ranks: pd.DataFrame
    friedman: Dict[Tuple[str, str], Optional[FriedmanResult]]
    tasks: Dict[str, Any]
    config: Dict[str, Any] = field(default_factory=dict)

    def rank_table(self) -> pd.DataFrame:
        """Methods x '<classifier>/<metric>' mean-rank table"""
        series = {
            f"{clf}/{metric}": group.set_index('method')['mean_rank']
            for (clf, metric), group in self.mean_ranks.groupby(['classifier', 'metric'], sort=True)
        }
        if not series:
            return pd.DataFrame()
        return ranking_table(series)

    def mean_rank(self, classifier: str, metric: str) -> pd.Series:
        rows = self.mean_ranks[(self.mean_ranks['classifier'] == classifier)
                               & (self.mean_ranks['metric'] == metric)]
        return rows.set_index('method')['mean_rank']

    def gains(self) -> Tuple[pd.DataFrame, pd.DataFrame]:
        """k-means SMOTE minus SMOTE per dataset, with mean/max summaries"""
        return score_gains(self.scores)

    def to_dict(self) -> Dict[str, Any]:
        gains, gain_summary = self.gains()
        return {
            'config': self.config,
            'tasks': self.tasks,
            'scores': _records(self.scores),
            'meanRanks': _records(self.mean_ranks),
            'gains': {'datasets': _records(gains), 'summary': _records(gain_summary)},
            'friedman': [
                {'classifier': clf, 'metric': metric,
                 **(result.to_dict() if result is not None else {'statistic': None})}
                for (clf, metric), result in sorted(self.friedman.items())
            ],
        }

    def write(self, output_dir: Union[str, Path]) -> Dict[str, Path]:
        """Write report.json, cells.csv, scores.csv, ranks.csv and gains.csv atomically"""
        output_dir = Path(output_dir)
        rank_table = self.rank_table()
        gains, _ = self.gains()
        paths = {
            'report': write_json(self.to_dict(), output_dir / 'report.json'),
            'cells': write_frame(self.cells, output_dir / 'cells.csv'),
            'scores': write_frame(self.scores, output_dir / 'scores.csv'),
            'ranks': write_frame(rank_table.reset_index(), output_dir / 'ranks.csv'),
            'gains': write_frame(gains, output_dir / 'gains.csv'),
        }
        logger.info(f"Report written to {output_dir}")
        return paths


def _records(frame: pd.DataFrame) -> List[Dict[str, Any]]:
    # NaN is not valid JSON
    return [
        {k: (None if isinstance(v, float) and np.isnan(v) else v) for k, v in row.items()}
        for row in frame.to_dict(orient='records')
    ]


def _cells_frame(results: List[Dict[str, Any]], grid: GridSpec) -> pd.DataFrame:
    classifiers = {c.label: c.name for specs in grid.classifiers.values() for c in specs}
    rows = []
    for r in results:
        if r['status'] == STATUS_SKIPPED:
            continue
        for clf_label, family in classifiers.items():
            values = r['scores'].get(clf_label, {})
            for metric in grid.metrics:
                rows.append((
                    r['dataset'], r['method'], r['oversampler'], family, clf_label,
                    metric, r['repeat'], r['fold'], values.get(metric, np.nan),
                ))
    cells = pd.DataFrame(rows, columns=CELL_COLUMNS)
    return cells.sort_values(CELL_COLUMNS[:-1], kind='stable').reset_index(drop=True)


def aggregate(cells: pd.DataFrame, grid: GridSpec, n_folds_total: int) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Best-over-grid scores

    A grid point is valid when every fold produced a score; the best valid
    point per (dataset, classifier, metric, method) is the one with the
    highest fold mean (ties: lexicographically first labels).

    Returns:
        (scores, block_scores)
    """
    keys = ['dataset', 'classifier', 'metric', 'method', 'oversampler', 'classifier_params']
    points = (
        cells.groupby(keys, sort=True)['score']
        .agg(mean='mean', std='std', valid='count', total='size')
        .reset_index()
    )
    points = points[points['valid'] == n_folds_total]
    points = points.sort_values(
        ['dataset', 'classifier', 'metric', 'method', 'mean', 'oversampler', 'classifier_params'],
        ascending=[True, True, True, True, False, True, True],
        kind='stable',
    )
    best = points.groupby(['dataset', 'classifier', 'metric', 'method'], sort=True).head(1)

    # methods without a valid point keep a NaN row
    datasets = sorted(cells['dataset'].unique())
    full_index = pd.MultiIndex.from_product(
        [datasets, sorted(grid.classifiers), list(grid.metrics), sorted(grid.oversamplers)],
        names=['dataset', 'classifier', 'metric', 'method'],
    )
    scores = (
        best.set_index(['dataset', 'classifier', 'metric', 'method'])
        .reindex(full_index)
        .reset_index()
        .rename(columns={'oversampler': 'best_oversampler', 'classifier_params': 'best_classifier'})
        [['dataset', 'classifier', 'metric', 'method', 'mean', 'std',
          'best_oversampler', 'best_classifier']]
    )

    chosen = best[['dataset', 'classifier', 'metric', 'method', 'oversampler', 'classifier_params']]
    block = (
        cells.merge(chosen, on=list(chosen.columns), how='inner')
        .groupby(['dataset', 'classifier', 'metric', 'method', 'repeat'], sort=True)['score']
        .mean()
        .reset_index()
    )
    return scores, block


def rank_methods(
    block_scores: pd.DataFrame,
    methods: Sequence[str],
    alpha: float = settings.SIGNIFICANCE_LEVEL,
) -> Tuple[pd.DataFrame, Dict[Tuple[str, str], Optional[FriedmanResult]]]:
    """
    Rank methods per (dataset, repeat) block, average the ranks, run the
    Friedman test per (classifier, metric). Missing scores rank last.

    ``block_scores`` needs columns dataset, repeat, classifier, metric,
    method and score.
    """
    methods = sorted(methods)
    rows, friedman = [], {}
    for (clf, metric), group in block_scores.groupby(['classifier', 'metric'], sort=True):
        table = (
            group.pivot_table(index=['dataset', 'repeat'], columns='method',
                              values='score', aggfunc='mean')
            .reindex(columns=methods)
        )
        if len(methods) >= 2:
            for method, value in mean_ranking(table).items():
                rows.append({'classifier': clf, 'metric': metric,
                             'method': method, 'mean_rank': float(value)})
        if len(methods) >= 3 and table.shape[0] >= 2:
            friedman[(clf, metric)] = friedman_test(rank_matrix(table).to_numpy().T, alpha=alpha)
        else:
            friedman[(clf, metric)] = None

    mean_ranks = pd.DataFrame(rows, columns=['classifier', 'metric', 'method', 'mean_rank'])
    return mean_ranks, friedman


# ===== EXPERIMENT =====

def run_experiment(
    datasets: Sequence[Dataset],
    grid: GridSpec,
    folds: int = settings.DEFAULT_FOLDS,
    repeats: int = settings.DEFAULT_REPEATS,
    seed: int = settings.DEFAULT_SEED,
    jobs: int = 1,
    cache: Optional[ResultCache] = None,
    progress_callback: Optional[ProgressCallback] = None,
) -> EvalReport:
    """
    Run the full evaluation protocol

    For every dataset, every oversampler point and every (repeat, fold): the
    training split alone is oversampled, every classifier point is fitted
    on it and the untouched test split is scored on every metric. Failed
    tasks are recorded and the run continues.

    Args:
        datasets: binary datasets (names must be unique)
        grid: GridSpec
        folds, repeats: repeated stratified k-fold shape
        seed: master seed; every task draws from its own hashed substream
        jobs: worker processes (results do not depend on it)
        cache: optional ResultCache; cached tasks are not recomputed
        progress_callback: callback(done, total, status, message)

    Returns:
        EvalReport
    """
    names = [d.name for d in datasets]
    if len(set(names)) != len(names):
        raise ValueError(f"dataset names must be unique: {names}")

    with LoggerContext(logger, f"Experiment: {len(datasets)} dataset(s), "
                               f"{grid.n_combinations} combination(s), {repeats}x{folds} CV"):
        tasks, failures = _build_tasks(datasets, grid, folds, repeats, seed)
        total = len(tasks)

        results: Dict[str, Dict[str, Any]] = {}
        pending = []
        for task in tasks:
            cached = cache.get(task.key) if cache is not None else None
            if cached is not None:
                results[task.key] = cached
            else:
                pending.append(task)
        if cache is not None:
            logger.info(f"Cache: {total - len(pending)}/{total} task(s) reused")

        done = total - len(pending)
        if progress_callback:
            progress_callback(done, total, 'processing', f"{done}/{total} tasks cached")

        def collect(task: _Task, result: Dict[str, Any]):
            nonlocal done
            results[task.key] = result
            done += 1
            if result['status'] == STATUS_ERROR:
                logger.warning(f"Task failed ({task.dataset.name}, {task.spec.label}, "
                               f"repeat {task.repeat}, fold {task.fold}): {result.get('error')}")
            if progress_callback:
                progress_callback(done, total, result['status'],
                                  f"{task.dataset.name} {task.spec.label} r{task.repeat} f{task.fold}")

        if jobs > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                chunksize = max(1, len(pending) // (jobs * 8))
                for task, result in zip(pending, executor.map(run_task, pending, chunksize=chunksize)):
                    collect(task, result)
        else:
            for task in pending:
                collect(task, run_task(task))

        if cache is not None and pending:
            cache.put_many((task.key, results[task.key]) for task in pending)

        ordered = [results[task.key] for task in tasks]
        status_counts = {
            status: sum(1 for r in ordered if r['status'] == status)
            for status in (STATUS_SUCCESS, STATUS_ERROR, STATUS_SKIPPED)
        }
        for r in ordered:
            if r['status'] == STATUS_ERROR or r['errors']:
                failures.append({
                    'dataset': r['dataset'], 'oversampler': r['oversampler'],
                    'repeat': r['repeat'], 'fold': r['fold'], 'status': r['status'],
                    'error': r.get('error'), 'classifierErrors': r['errors'],
                })
        skipped = sorted({
            (r['dataset'], r['oversampler'], r.get('reason', ''))
            for r in ordered if r['status'] == STATUS_SKIPPED
        })
        for dataset_name, label, reason in skipped:
            logger.warning(f"{dataset_name}: skipped {label}: {reason}")

        cells = _cells_frame(ordered, grid)
        scores, block_scores = aggregate(cells, grid, folds * repeats)
        mean_ranks, friedman = rank_methods(block_scores, list(grid.oversamplers))

    if progress_callback:
        progress_callback(total, total, 'done',
                          f"{status_counts[STATUS_SUCCESS]}/{total} tasks successful")

    return EvalReport(
        cells=cells,
        scores=scores,
        block_scores=block_scores,
        mean_ranks=mean_ranks,
        friedman=friedman,
        tasks={
            'total': total,
            'counts': status_counts,
            'failures': failures,
            'skipped': [{'dataset': d, 'oversampler': o, 'reason': r} for d, o, r in skipped],
        },
        config={
            'datasets': [d.describe() for d in datasets],
            'grid': grid.to_dict(),
            'folds': folds,
            'repeats': repeats,
            'seed': seed,
        },
    )


def rank_scores_frame(
    scores: pd.DataFrame,
    alpha: float = settings.SIGNIFICANCE_LEVEL,
) -> Tuple[pd.DataFrame, Dict[Tuple[str, str], Optional[FriedmanResult]]]:
    """
    Mean ranks and Friedman tests from a flat score table

    ``scores`` needs columns dataset, classifier, metric, method, score and
    optionally repeat (one block per dataset x repeat).
    """
    required = {'dataset', 'classifier', 'metric', 'method', 'score'}
    missing = required - set(scores.columns)
    if missing:
        raise ValueError(f"score table lacks column(s) {sorted(missing)}")
    frame = scores.copy()
    if 'repeat' not in frame.columns:
        frame['repeat'] = 0
    if frame['method'].nunique() < 2:
        raise ValueError("ranking needs at least two methods")
    return rank_methods(frame, frame['method'].unique(), alpha=alpha)


# ===== SCORE GAINS =====

GAIN_COLUMNS = ['dataset', 'classifier', 'metric', 'method', 'baseline',
                'method_score', 'baseline_score', 'gain']
GAIN_SUMMARY_COLUMNS = ['classifier', 'metric', 'mean_gain', 'max_gain', 'datasets', 'improved']


def score_gains(
    scores: pd.DataFrame,
    method: str = 'kmeans-smote',
    baseline: str = 'smote',
) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """
    Score improvement of ``method`` over ``baseline`` per dataset

    Uses the ``mean`` column of an evaluate scores table, or ``score`` for a
    flat table. Datasets where either method has no valid score get a NaN
    gain and are left out of the summary.

    Returns:
        (gains, summary): per (dataset, classifier, metric) differences, and
        per (classifier, metric) mean and maximum gain over datasets plus
        how many datasets improved
    """
    value = 'mean' if 'mean' in scores.columns else 'score'
    required = {'dataset', 'classifier', 'metric', 'method', value}
    missing = required - set(scores.columns)
    if missing:
        raise ValueError(f"score table lacks column(s) {sorted(missing)}")

    present = set(scores['method'])
    if method not in present or baseline not in present:
        logger.debug(f"No gains: need both {method!r} and {baseline!r} in the score table")
        return pd.DataFrame(columns=GAIN_COLUMNS), pd.DataFrame(columns=GAIN_SUMMARY_COLUMNS)

    keys = ['dataset', 'classifier', 'metric']
    wide = (
        scores[scores['method'].isin([method, baseline])]
        .groupby(keys + ['method'], sort=True)[value].mean()
        .unstack('method')
        .reindex(columns=[method, baseline])
    )
    gains = pd.DataFrame({
        'method': method,
        'baseline': baseline,
        'method_score': wide[method],
        'baseline_score': wide[baseline],
        'gain': wide[method] - wide[baseline],
    }, index=wide.index).reset_index()[GAIN_COLUMNS]
    gains = gains.sort_values(keys, kind='stable').reset_index(drop=True)

    valid = gains.dropna(subset=['gain'])
    if valid.empty:
        return gains, pd.DataFrame(columns=GAIN_SUMMARY_COLUMNS)
    summary = (
        valid.groupby(['classifier', 'metric'], sort=True)['gain']
        .agg(mean_gain='mean', max_gain='max', datasets='count',
             improved=lambda g: int((g > 0).sum()))
        .reset_index()
    )[GAIN_SUMMARY_COLUMNS]
    return gains, summary


# ===== EXPORT =====
__all__ = [
    'GridSpec',
    'EvalReport',
    'run_task',
    'run_experiment',
    'aggregate',
    'rank_methods',
    'rank_scores_frame',
    'score_gains',
    'dataset_fingerprint',
    'STATUS_SUCCESS',
    'STATUS_ERROR',
    'STATUS_SKIPPED',
]
