"""
Demo file cho k-means SMOTE
Chạy file này để xem các cụm được chọn, trọng số và một lần đánh giá nhỏ
"""

import math

from utils import setup_logging, get_logger
from core.data import make_blobs
from core.oversamplers import KmsParams, OversamplerSpec, kmeans_smote
from core.classifiers import ClassifierSpec
from core.managers import GridSpec, run_experiment

# Setup logging
setup_logging('WARNING')
logger = get_logger(__name__)


def show_clusters():
    """In bảng các cụm được giữ lại sau bước filter"""
    print("=" * 70)
    print("K-MEANS SMOTE: FILTERED CLUSTERS")
    print("=" * 70)

    d = make_blobs(40, 160, 2, 2.5, seed=3)
    batch = kmeans_smote(d, KmsParams(k=10, irt=1.0, knn=5, seed=0, on_empty='smote'))

    print(f"{d!r}")
    print(f"Generated {len(batch)} sample(s)\n")
    print(f"{'cluster':>8} {'minority':>9} {'majority':>9} {'IR':>6} {'weight':>8} {'quota':>6}")
    for c in batch.clusters:
        print(f"{c.cluster_id:>8} {c.minority_count:>9} {c.majority_count:>9} "
              f"{c.imbalance_ratio:>6.2f} {c.sampling_weight:>8.3f} {c.quota:>6}")
    for message in batch.warnings:
        print(f"  ! {message}")


def show_balance():
    """Mỗi oversampler đều cân bằng hai lớp"""
    print()
    print("=" * 70)
    print("BALANCE CHECK")
    print("=" * 70)

    d = make_blobs(25, 100, 3, 2.0, seed=1)
    specs = [
        OversamplerSpec('random'),
        OversamplerSpec('smote', {'knn': 5}),
        OversamplerSpec('borderline1', {'knn': 5}),
        OversamplerSpec('borderline2', {'knn': 5}),
        OversamplerSpec('kmeans-smote', {'k': 1, 'irt': math.inf, 'knn': 5}),
        OversamplerSpec('kmeans-smote', {'k': 8, 'irt': 1.0, 'knn': 5, 'on_empty': 'smote'}),
    ]
    for spec in specs:
        stats = spec.apply(d, seed=7).stats
        print(f"{spec.label:<45} minority={stats.minority_count:>4} majority={stats.majority_count:>4}")


def show_evaluation():
    """Đánh giá nhỏ: 3 dataset, 3x2 CV"""
    print()
    print("=" * 70)
    print("MINI EVALUATION")
    print("=" * 70)

    datasets = [
        make_blobs(15, 60, 2, sep, seed=i).subset(range(75), name=f"blobs_sep{sep:g}")
        for i, sep in enumerate([1.0, 2.0, 3.0])
    ]
    grid = GridSpec(
        oversamplers={
            'smote': (OversamplerSpec('smote', {'knn': 5}),),
            'kmeans-smote': tuple(
                OversamplerSpec('kmeans-smote', {'k': k, 'irt': 1.0, 'knn': 5, 'on_empty': 'smote'})
                for k in (2, 5)
            ),
        },
        classifiers={'knn': (ClassifierSpec('knn', {'k': 5}),)},
    )
    report = run_experiment(datasets, grid, folds=3, repeats=2, seed=0)

    print(report.rank_table().to_string(float_format=lambda v: f"{v:.2f}"))
    for (clf, metric), result in sorted(report.friedman.items()):
        print(f"Friedman {clf}/{metric}: statistic={result.statistic:.3f} p={result.p_value:.3g}")


def main():
    logger.info("Starting k-means SMOTE demo...")
    show_clusters()
    show_balance()
    show_evaluation()


if __name__ == '__main__':
    main()
