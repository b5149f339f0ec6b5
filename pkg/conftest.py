"""
Shared pytest fixtures
"""

import os
import tempfile

# log file must not land in the repository during tests
os.environ.setdefault('KMS_LOG_DIR', tempfile.mkdtemp(prefix='kms_logs_'))

import numpy as np
import pytest

from core.data import Dataset, make_blobs, save_csv
from core.classifiers import CLASSIFIERS, register_classifier


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full benchmark runs, skipped without their data files')


# ===== DATASETS =====

@pytest.fixture
def blobs():
    """20 minority vs 80 majority, two overlapping Gaussian blobs in 2-D"""
    return make_blobs(20, 80, 2, 3.0, seed=1)


def _unit_square(offset, scale):
    corners = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    return corners * scale + np.asarray(offset, dtype=np.float64)


@pytest.fixture
def two_blob():
    """
    Two minority groups with equal counts (4 each), the second three times
    as spread out as the first, plus a far-away majority group of 33 rows

    Rows 0-3: dense minority, rows 4-7: sparse minority.
    """
    rng = np.random.default_rng(11)
    dense = _unit_square((0.0, 0.0), 1.0)
    sparse = _unit_square((1000.0, 0.0), 3.0)
    majority = rng.normal(loc=(0.0, 1000.0), scale=1.0, size=(33, 2))
    return Dataset(
        features=np.vstack([dense, sparse, majority]),
        labels=np.array([1] * 8 + [0] * 33),
        name='two_blob',
    )


@pytest.fixture
def outlier():
    """
    30 minority rows near the origin, 60 majority rows around (20, 0) and a
    single minority outlier planted at the centre of the majority blob

    The outlier is the last row.
    """
    rng = np.random.default_rng(5)
    minority = rng.normal(loc=(0.0, 0.0), scale=1.0, size=(30, 2))
    majority = rng.normal(loc=(20.0, 0.0), scale=2.0, size=(60, 2))
    planted = np.array([[20.0, 0.0]])
    return Dataset(
        features=np.vstack([minority, majority, planted]),
        labels=np.array([1] * 30 + [0] * 60 + [1]),
        name='outlier',
    )


@pytest.fixture
def fixtures(blobs, two_blob, outlier):
    return [blobs, two_blob, outlier]


@pytest.fixture
def blobs_csv(tmp_path, blobs):
    return save_csv(blobs, tmp_path / 'blobs.csv')


# ===== CLASSIFIERS =====

class _Oracle:
    """Looks every test row up in the full dataset: scores == truth"""

    def __init__(self, lookup):
        self.lookup = lookup

    def predict_scores(self, X):
        return np.array([self.lookup[tuple(row)] for row in np.asarray(X)], dtype=np.float64)


@pytest.fixture
def oracle_classifier(blobs):
    lookup = {tuple(row): float(label) for row, label in zip(blobs.features, blobs.labels)}

    def fit(train, seed=0, **params):
        return _Oracle(lookup)

    register_classifier('oracle', fit)
    yield 'oracle'
    CLASSIFIERS.pop('oracle', None)
