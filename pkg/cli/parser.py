"""
Argument parser for the kmeans-smote command line
Every option defaults to None so that unset flags never override values
from the config file
"""

import argparse

from config import settings
from config.run_config import parse_de, parse_irt, parse_knn, parse_list, ConfigError


def _typed(parse):
    # argparse reports ArgumentTypeError as a usage error (exit 2)
    def convert(text: str):
        try:
            return parse(text)
        except ConfigError as e:
            raise argparse.ArgumentTypeError(str(e)) from None
    convert.__name__ = parse.__name__
    return convert


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--config', dest='config_file', default=None,
                        help='flat key = value file; flags override it')
    parser.add_argument('--seed', type=int, default=None, help='master seed')
    parser.add_argument('-o', '--output', default=None, help='output directory')
    parser.add_argument('--log-level', default=None,
                        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'])


def _add_dataset_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--label-column', default=None,
                        help='label column name or index (default: last column)')
    parser.add_argument('--minority-label', default=None,
                        help='label value to treat as the minority class')
    parser.add_argument('--one-vs-rest', action='store_true', default=None,
                        help='binarize multi-class inputs: smallest class vs the rest')
    parser.add_argument('--scale', action='store_true', default=None,
                        help='z-score features before resampling')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='kmeans-smote',
        description='Rebalance binary imbalanced datasets with k-means SMOTE '
                    'and compare oversamplers with repeated stratified CV.',
    )
    parser.add_argument('--version', action='version',
                        version=f"{settings.APP_TITLE} {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest='command', required=True)

    # ===== oversample =====
    p = sub.add_parser('oversample', help='write a balanced copy of one dataset')
    p.add_argument('inputs', nargs='*', help='input CSV')
    _add_common(p)
    _add_dataset_options(p)
    p.add_argument('--method', default=None, choices=settings.OVERSAMPLING_METHODS)
    p.add_argument('--k', type=int, default=None, help='number of clusters')
    p.add_argument('--irt', type=_typed(parse_irt), default=None,
                   help="imbalance ratio threshold (number or 'inf')")
    p.add_argument('--knn', type=_typed(parse_knn), default=None,
                   help="SMOTE neighbors (integer or 'all')")
    p.add_argument('--de', type=_typed(parse_de), default=None,
                   help="density exponent (number or 'auto' = feature count)")
    p.add_argument('--n', type=int, default=None,
                   help='samples to generate (default: majority - minority)')
    p.add_argument('--m-neighbors', type=int, default=None,
                   help='borderline-SMOTE neighborhood size (default: knn)')
    p.add_argument('--on-empty', default=None, choices=['error', 'smote'],
                   help='what to do when no cluster passes the filter')

    # ===== evaluate =====
    p = sub.add_parser('evaluate', help='run the cross-validated comparison')
    p.add_argument('inputs', nargs='*', help='input CSV files')
    _add_common(p)
    _add_dataset_options(p)
    p.add_argument('--folds', type=int, default=None)
    p.add_argument('--repeats', type=int, default=None)
    p.add_argument('--jobs', type=int, default=None, help='worker processes')
    p.add_argument('--grid', default=None, choices=['desk', 'full'])
    p.add_argument('--methods', type=parse_list, default=None,
                   help='comma separated subset of oversamplers')
    p.add_argument('--classifiers', type=parse_list, default=None,
                   help='comma separated subset of classifiers (knn, logreg)')
    p.add_argument('--metrics', type=parse_list, default=None,
                   help='comma separated metrics (default: g_mean,f1,auprc)')
    p.add_argument('--with-variants', action='store_true', default=None,
                   help='add the undersampled variants of every dataset')
    p.add_argument('--no-cache', dest='cache', action='store_false', default=None,
                   help='recompute every task')
    p.add_argument('--clear-cache', action='store_true', default=None,
                   help='empty cells.sqlite before running')

    # ===== rank =====
    p = sub.add_parser('rank', help='mean ranks and Friedman tests from a score table')
    p.add_argument('inputs', nargs='*', help='scores CSV (dataset, classifier, metric, method, score)')
    _add_common(p)

    # ===== variants =====
    p = sub.add_parser('variants', help='write the undersampled variants of a dataset')
    p.add_argument('inputs', nargs='*', help='input CSV')
    _add_common(p)
    _add_dataset_options(p)
    p.add_argument('--factors', type=lambda v: [float(x) for x in parse_list(v)], default=None,
                   help='comma separated factors (default: 2,4,6,10,15,20)')

    return parser


__all__ = ['build_parser']
