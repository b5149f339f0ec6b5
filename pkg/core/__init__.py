"""
Module core chứa logic chính của thư viện
Dataset, k-means, oversamplers, metrics, classifiers, ranking và experiment harness
"""

from .data import (
    Dataset,
    ClassStats,
    FoldPlan,
    DatasetError,
    CSVParseError,
    LabelError,
    FoldError,
    load_csv,
    save_csv,
    make_undersampled_variant,
    undersampled_variants,
    stratified_kfold,
    make_blobs,
    standardize,
)
from .kmeans import ClusterModel, ClusteringError, fit_kmeans, predict_cluster
from .oversamplers import (
    OversamplerSpec,
    SyntheticBatch,
    KmsParams,
    kmeans_smote,
    smote,
    borderline_smote,
    random_oversample,
)
from .metrics import ConfusionMatrix, ScoredPredictions, METRICS
from .classifiers import ClassifierSpec, TrainedModel, fit_knn, fit_logreg, predict_scores
from .ranking import mean_ranking, friedman_test
from .cache import ResultCache
from .managers import GridSpec, EvalReport, run_experiment

__all__ = [
    'Dataset',
    'ClassStats',
    'FoldPlan',
    'DatasetError',
    'CSVParseError',
    'LabelError',
    'FoldError',
    'load_csv',
    'save_csv',
    'make_undersampled_variant',
    'undersampled_variants',
    'stratified_kfold',
    'make_blobs',
    'standardize',
    'ClusterModel',
    'ClusteringError',
    'fit_kmeans',
    'predict_cluster',
    'OversamplerSpec',
    'SyntheticBatch',
    'KmsParams',
    'kmeans_smote',
    'smote',
    'borderline_smote',
    'random_oversample',
    'ConfusionMatrix',
    'ScoredPredictions',
    'METRICS',
    'ClassifierSpec',
    'TrainedModel',
    'fit_knn',
    'fit_logreg',
    'predict_scores',
    'mean_ranking',
    'friedman_test',
    'ResultCache',
    'GridSpec',
    'EvalReport',
    'run_experiment',
]
