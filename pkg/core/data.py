"""
Dataset representation and ingestion
Binary datasets (label 1 = minority), CSV load/save, class statistics,
stratified folding and derived datasets (undersampled variants, blobs)
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from config import settings
from utils import get_logger, make_rng, substream_seed

logger = get_logger(__name__)

PathLike = Union[str, Path]


# ===== EXCEPTIONS =====

class DatasetError(ValueError):
    """Base exception cho dataset errors"""
    pass


class CSVParseError(DatasetError):
    """A feature cell could not be parsed as a finite real number"""

    def __init__(self, path: PathLike, row: int, column: str, value: str):
        self.path = str(path)
        self.row = row
        self.column = column
        self.value = value
        super().__init__(
            f"{self.path}: cannot parse value {value!r} at row {row}, column {column!r}"
        )


class LabelError(DatasetError):
    """Label column missing, single-class, or not binary"""
    pass


class FoldError(DatasetError):
    """Invalid cross-validation request"""
    pass


# ===== DOMAIN TYPES =====

@dataclass(frozen=True)
class ClassStats:
    """Class counts of a binary dataset"""
    minority_count: int
    majority_count: int

    @property
    def imbalance_ratio(self) -> float:
        if self.minority_count == 0:
            return math.inf
        return self.majority_count / self.minority_count

    @property
    def total(self) -> int:
        return self.minority_count + self.majority_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            'minority': self.minority_count,
            'majority': self.majority_count,
            'total': self.total,
        }


@dataclass(frozen=True, eq=False)
class Dataset:
    """
    Immutable binary dataset

    Attributes:
        features: (n, m) float matrix, all entries finite
        labels: (n,) vector in {0, 1}, 1 = minority
        name: identifier used in reports and file names
        feature_names: optional column names (len m)
        label_name: name of the label column when serialized
        label_values: original label text for (majority, minority)
    """
    features: np.ndarray
    labels: np.ndarray
    name: str = 'dataset'
    feature_names: Optional[Tuple[str, ...]] = None
    label_name: str = 'label'
    label_values: Tuple[str, str] = ('0', '1')

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64, copy=True)
        labels = np.array(self.labels, copy=True)

        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise DatasetError(f"features must be a 2-D matrix, got ndim={features.ndim}")
        if labels.ndim != 1:
            raise DatasetError("labels must be a vector")
        if features.shape[0] == 0:
            raise DatasetError("dataset is empty")
        if features.shape[0] != labels.shape[0]:
            raise DatasetError(
                f"rows(features)={features.shape[0]} != len(labels)={labels.shape[0]}"
            )
        if not np.all(np.isfinite(features)):
            raise DatasetError("features contain NaN or infinite entries")
        if not np.all((labels == 0) | (labels == 1)):
            raise LabelError("labels must be 0 (majority) or 1 (minority)")

        labels = labels.astype(np.int8)
        n_min = int(labels.sum())
        n_maj = int(labels.shape[0] - n_min)
        if n_min == 0 or n_maj == 0:
            raise LabelError("both classes must be present")
        if n_min > n_maj:
            raise LabelError(
                f"minority count {n_min} exceeds majority count {n_maj}"
            )

        names = self.feature_names
        if names is not None:
            names = tuple(str(n) for n in names)
            if len(names) != features.shape[1]:
                raise DatasetError(
                    f"{len(names)} feature names for {features.shape[1]} features"
                )

        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, 'features', features)
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'feature_names', names)
        object.__setattr__(self, 'label_values', tuple(str(v) for v in self.label_values))

    # ----- Properties -----

    @property
    def n_samples(self) -> int:
        return int(self.features.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.features.shape[1])

    @property
    def stats(self) -> ClassStats:
        n_min = int(self.labels.sum())
        return ClassStats(minority_count=n_min, majority_count=self.n_samples - n_min)

    @property
    def minority_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labels == 1)

    @property
    def majority_indices(self) -> np.ndarray:
        return np.flatnonzero(self.labels == 0)

    @property
    def column_names(self) -> Tuple[str, ...]:
        if self.feature_names is not None:
            return self.feature_names
        return tuple(f"x{i}" for i in range(self.n_features))

    # ----- Derivations -----

    def subset(self, indices: Sequence[int], name: Optional[str] = None) -> 'Dataset':
        """Rows ``indices`` (in the given order) as a new Dataset"""
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(
            features=self.features[idx],
            labels=self.labels[idx],
            name=name or self.name,
            feature_names=self.feature_names,
            label_name=self.label_name,
            label_values=self.label_values,
        )

    def with_features(self, features: np.ndarray, name: Optional[str] = None) -> 'Dataset':
        return Dataset(
            features=features,
            labels=self.labels,
            name=name or self.name,
            feature_names=self.feature_names,
            label_name=self.label_name,
            label_values=self.label_values,
        )

    def append_batch(self, batch) -> 'Dataset':
        """Original rows followed by the synthetic minority rows of ``batch``"""
        if len(batch) == 0:
            return self
        if batch.samples.shape[1] != self.n_features:
            raise DatasetError(
                f"batch has {batch.samples.shape[1]} features, dataset has {self.n_features}"
            )
        return Dataset(
            features=np.vstack([self.features, batch.samples]),
            labels=np.concatenate([self.labels, np.ones(len(batch), dtype=np.int8)]),
            name=self.name,
            feature_names=self.feature_names,
            label_name=self.label_name,
            label_values=self.label_values,
        )

    def equals(self, other: 'Dataset') -> bool:
        """Exact (bit-level) equality of contents and metadata"""
        return (
            isinstance(other, Dataset)
            and self.name == other.name
            and self.feature_names == other.feature_names
            and self.label_name == other.label_name
            and self.label_values == other.label_values
            and self.features.shape == other.features.shape
            and np.array_equal(self.features, other.features)
            and np.array_equal(self.labels, other.labels)
        )

    def describe(self) -> Dict[str, Any]:
        """Metadata echoed as JSON"""
        stats = self.stats
        return {
            'name': self.name,
            'm': self.n_features,
            'counts': stats.to_dict(),
            'imbalanceRatio': stats.imbalance_ratio,
        }

    def __repr__(self) -> str:
        stats = self.stats
        return (
            f"Dataset(name={self.name!r}, n={self.n_samples}, m={self.n_features}, "
            f"minority={stats.minority_count}, majority={stats.majority_count})"
        )


@dataclass(frozen=True)
class FoldPlan:
    """
    Repeated stratified k-fold plan

    ``folds`` holds (train, test) index arrays ordered repeat-major:
    folds[r * k + f] is fold f of repeat r.
    """
    folds: Tuple[Tuple[np.ndarray, np.ndarray], ...]
    k: int
    repeats: int
    seed: int

    def repeat_folds(self, repeat: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
        if not 0 <= repeat < self.repeats:
            raise IndexError(f"repeat {repeat} out of range [0, {self.repeats})")
        return self.folds[repeat * self.k:(repeat + 1) * self.k]

    def __iter__(self):
        for position, (train, test) in enumerate(self.folds):
            yield position // self.k, position % self.k, train, test

    def __len__(self) -> int:
        return len(self.folds)


# ===== CSV IO =====

def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _choose_minority(counts: pd.Series) -> str:
    # least frequent, ties -> lexicographically first label
    ordered = sorted(counts.items(), key=lambda item: (item[1], item[0]))
    return ordered[0][0]


def _parse_column(path: Path, column: str, cells: pd.Series) -> np.ndarray:
    # float() is correctly rounded, so save_csv -> load_csv is bit-exact
    stripped = cells.str.strip().to_numpy()
    try:
        parsed = stripped.astype(np.float64)
    except ValueError:
        parsed = None

    if parsed is not None:
        bad = ~np.isfinite(parsed)
        if not bad.any():
            return parsed
        first_bad = int(np.flatnonzero(bad)[0])
    else:
        first_bad = 0
        for first_bad, text in enumerate(stripped):
            try:
                if math.isfinite(float(text)):
                    continue
            except ValueError:
                pass
            break

    # +2: header line, 1-based numbering
    raise CSVParseError(path, row=first_bad + 2, column=column, value=cells.iloc[first_bad])


def load_csv(
    path: PathLike,
    label_column: Union[str, int] = -1,
    minority_label: Optional[str] = None,
    one_vs_rest: bool = False,
    name: Optional[str] = None,
) -> Dataset:
    """
    Load a binary dataset from CSV (comma separated, header row, '.' decimals, UTF-8)

    Args:
        path: CSV file
        label_column: column name, or positional index (negative allowed)
        minority_label: label value that becomes class 1; with more than two
            classes it acts as a one-vs-rest mapping
        one_vs_rest: with more than two classes and no minority_label, make
            the smallest class the minority and merge all others
        name: dataset name (default: file stem)

    Returns:
        Dataset

    Raises:
        FileNotFoundError, CSVParseError, LabelError, DatasetError
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Dataset file not found: {path}")

    try:
        frame = pd.read_csv(
            path,
            sep=settings.CSV_SEPARATOR,
            header=0,
            dtype=str,
            encoding=settings.CSV_ENCODING,
            keep_default_na=False,
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DatasetError(f"{path}: cannot read CSV: {e}") from e

    if frame.shape[0] == 0:
        raise DatasetError(f"{path}: no data rows")

    columns = list(frame.columns)
    if isinstance(label_column, (int, np.integer)):
        try:
            label_name = columns[int(label_column)]
        except IndexError:
            raise LabelError(
                f"{path}: label column index {label_column} out of range ({len(columns)} columns)"
            ) from None
    else:
        if label_column not in columns:
            raise LabelError(f"{path}: label column {label_column!r} not found")
        label_name = label_column

    raw_labels = frame[label_name].str.strip()
    counts = raw_labels.value_counts()

    if minority_label is not None:
        minority_label = str(minority_label)
        if minority_label not in counts.index:
            raise LabelError(f"{path}: minority label {minority_label!r} not present")
        others = sorted(v for v in counts.index if v != minority_label)
        if not others:
            raise LabelError(f"{path}: only one class present")
        majority_value = others[0] if len(others) == 1 else f"not_{minority_label}"
        minority_value = minority_label
    else:
        if len(counts) < 2:
            raise LabelError(f"{path}: only one class present")
        if len(counts) > 2 and not one_vs_rest:
            raise LabelError(
                f"{path}: label column has {len(counts)} classes; "
                f"pass minority_label or one_vs_rest=True"
            )
        minority_value = _choose_minority(counts)
        others = sorted(v for v in counts.index if v != minority_value)
        majority_value = others[0] if len(others) == 1 else f"not_{minority_value}"
        if len(others) > 1:
            logger.info(
                f"{path.name}: one-vs-rest binarization, minority class {minority_value!r}"
            )

    labels = (raw_labels == minority_value).to_numpy().astype(np.int8)

    feature_columns = [c for c in columns if c != label_name]
    if not feature_columns:
        raise DatasetError(f"{path}: no feature columns")

    features = np.empty((frame.shape[0], len(feature_columns)), dtype=np.float64)
    for j, column in enumerate(feature_columns):
        features[:, j] = _parse_column(path, column, frame[column])

    dataset = Dataset(
        features=features,
        labels=labels,
        name=name or path.stem,
        feature_names=tuple(feature_columns),
        label_name=label_name,
        label_values=(majority_value, minority_value),
    )
    logger.debug(f"Loaded {dataset!r} from {path}")
    return dataset


def to_frame(d: Dataset) -> pd.DataFrame:
    """Dataset as a DataFrame with the label column last, original label text"""
    frame = pd.DataFrame(d.features, columns=list(d.column_names))
    frame[d.label_name] = np.where(d.labels == 1, d.label_values[1], d.label_values[0])
    return frame


def save_csv(d: Dataset, path: PathLike) -> Path:
    """Write ``d`` in the same CSV dialect load_csv reads"""
    from utils.file_io import write_frame

    return write_frame(to_frame(d), path)


# ===== DERIVED DATASETS =====

def make_undersampled_variant(d: Dataset, factor: float, seed: int) -> Optional[Dataset]:
    """
    Randomly drop minority rows so the imbalance ratio grows by ~``factor``

    The minority class keeps round(minority / factor) rows (half up); majority
    rows are never touched. Returns None if fewer than eight minority rows
    would remain.
    """
    if factor < 1:
        raise ValueError(f"undersampling factor must be >= 1, got {factor}")
    if factor == 1:
        return d

    stats = d.stats
    target = _round_half_up(stats.minority_count / factor)
    if target < settings.MIN_MINORITY_AFTER_UNDERSAMPLING:
        logger.debug(f"{d.name}: factor {factor:g} leaves {target} minority rows, skipped")
        return None

    rng = make_rng(seed)
    kept_minority = rng.choice(d.minority_indices, size=target, replace=False)
    keep = np.sort(np.concatenate([d.majority_indices, kept_minority]))
    return d.subset(keep, name=f"{d.name}_us{factor:g}")


def undersampled_variants(
    d: Dataset,
    factors: Optional[Sequence[float]] = None,
    seed: int = 0,
) -> Tuple[List[Tuple[float, Dataset]], List[Dict[str, Any]]]:
    """
    All admissible undersampled variants of ``d``

    Returns:
        (variants, skipped): variants as (factor, Dataset); skipped entries
        carry the factor and a human-readable reason
    """
    if factors is None:
        factors = settings.UNDERSAMPLING_FACTORS

    variants, skipped = [], []
    for factor in factors:
        variant = make_undersampled_variant(d, factor, substream_seed(seed, 'variant', d.name, factor))
        if variant is None:
            target = _round_half_up(d.stats.minority_count / factor)
            reason = (
                f"factor {factor:g} leaves {target} minority instances "
                f"(< {settings.MIN_MINORITY_AFTER_UNDERSAMPLING})"
            )
            logger.info(f"{d.name}: skipping variant, {reason}")
            skipped.append({'factor': factor, 'reason': reason})
        else:
            variants.append((factor, variant))
    return variants, skipped


def stratified_kfold(d: Dataset, k: int, repeats: int = 1, seed: int = 0) -> FoldPlan:
    """
    Repeated stratified k-fold plan

    Per repeat each class is shuffled and dealt round-robin over the k folds,
    so every test fold holds floor or ceil of (class count / k) of each class.

    Raises:
        FoldError: k < 2, repeats < 1, or k > minority count
    """
    if k < 2:
        raise FoldError(f"k must be >= 2, got {k}")
    if repeats < 1:
        raise FoldError(f"repeats must be >= 1, got {repeats}")
    stats = d.stats
    if k > stats.minority_count:
        raise FoldError(
            f"k={k} exceeds minority count {stats.minority_count} of {d.name!r}"
        )

    folds = []
    all_idx = np.arange(d.n_samples)
    for repeat in range(repeats):
        rng = make_rng(substream_seed(seed, 'repeat', repeat))
        fold_of = np.empty(d.n_samples, dtype=np.intp)
        for class_idx in (d.minority_indices, d.majority_indices):
            shuffled = rng.permutation(class_idx)
            fold_of[shuffled] = np.arange(shuffled.shape[0]) % k
        for fold in range(k):
            test_mask = fold_of == fold
            folds.append((all_idx[~test_mask], all_idx[test_mask]))

    return FoldPlan(folds=tuple(folds), k=k, repeats=repeats, seed=seed)


def make_blobs(
    n_minority: int,
    n_majority: int,
    m: int,
    separation: float,
    seed: int,
) -> Dataset:
    """
    Two unit-variance Gaussian blobs whose centroids lie ``separation`` apart
    along the first axis (minority at the origin)
    """
    if n_minority < 2 or n_majority < 2:
        raise DatasetError("each class needs at least two instances")
    if m < 1:
        raise DatasetError("m must be >= 1")

    rng = make_rng(seed)
    minority = rng.standard_normal((n_minority, m))
    majority = rng.standard_normal((n_majority, m))
    majority[:, 0] += separation

    return Dataset(
        features=np.vstack([minority, majority]),
        labels=np.concatenate([np.ones(n_minority, dtype=np.int8),
                               np.zeros(n_majority, dtype=np.int8)]),
        name=f"blobs_{n_minority}_{n_majority}_{m}",
        feature_names=tuple(f"x{i}" for i in range(m)),
    )


def standardize(d: Dataset) -> Dataset:
    """Z-score every feature (constant features are only centered)"""
    mean = d.features.mean(axis=0)
    std = d.features.std(axis=0)
    std[std == 0] = 1.0
    return d.with_features((d.features - mean) / std)


# ===== EXPORT =====
__all__ = [
    'DatasetError',
    'CSVParseError',
    'LabelError',
    'FoldError',
    'ClassStats',
    'Dataset',
    'FoldPlan',
    'load_csv',
    'save_csv',
    'to_frame',
    'make_undersampled_variant',
    'undersampled_variants',
    'stratified_kfold',
    'make_blobs',
    'standardize',
]
