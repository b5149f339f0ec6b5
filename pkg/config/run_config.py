"""
Module quản lý cấu hình cho một lần chạy CLI
Gộp giá trị mặc định, file cấu hình (key = value) và flags dòng lệnh
"""

import math
from dataclasses import dataclass, field, fields, asdict
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Union

from dotenv import dotenv_values

from . import settings
from utils.logger import get_logger

logger = get_logger(__name__)

COMMANDS = ('oversample', 'evaluate', 'rank', 'variants')


class ConfigError(ValueError):
    """Giá trị cấu hình không hợp lệ"""
    pass


# ===== PARSERS =====

def parse_irt(value: Union[str, float]) -> float:
    """'inf' -> math.inf, còn lại là số thực > 0"""
    if isinstance(value, str) and value.strip().lower() == settings.INFINITY_LITERAL:
        return math.inf
    try:
        irt = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"irt must be a number > 0 or 'inf', got {value!r}") from None
    if not irt > 0:
        raise ConfigError(f"irt must be > 0, got {value!r}")
    return irt


def parse_knn(value: Union[str, int]) -> Union[int, str]:
    """'all' hoặc số nguyên >= 0"""
    if isinstance(value, str) and value.strip().lower() == settings.ALL_LITERAL:
        return settings.ALL_LITERAL
    try:
        knn = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"knn must be an integer >= 0 or 'all', got {value!r}") from None
    if knn < 0:
        raise ConfigError(f"knn must be >= 0, got {value!r}")
    return knn


def parse_de(value: Union[str, float]) -> Union[float, str]:
    """'auto' (= số features) hoặc số thực >= 0"""
    if isinstance(value, str) and value.strip().lower() == settings.AUTO_LITERAL:
        return settings.AUTO_LITERAL
    try:
        de = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"de must be a number >= 0 or 'auto', got {value!r}") from None
    if not (de >= 0 and math.isfinite(de)):
        raise ConfigError(f"de must be >= 0, got {value!r}")
    return de


def parse_bool(value: Union[str, bool]) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ('1', 'true', 'yes', 'on'):
        return True
    if text in ('0', 'false', 'no', 'off', ''):
        return False
    raise ConfigError(f"expected a boolean, got {value!r}")


def parse_list(value: Union[str, List[str]]) -> List[str]:
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [part.strip() for part in str(value).split(',') if part.strip()]


def _positive_int(name: str) -> Callable[[Any], int]:
    def parse(value: Any) -> int:
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be an integer, got {value!r}") from None
        if number < 1:
            raise ConfigError(f"{name} must be >= 1, got {value!r}")
        return number
    return parse


def _optional_int(name: str) -> Callable[[Any], Optional[int]]:
    def parse(value: Any) -> Optional[int]:
        if value is None or str(value).strip() == '':
            return None
        try:
            return int(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{name} must be an integer, got {value!r}") from None
    return parse


def _label_column(value: Union[str, int]) -> Union[str, int]:
    # số nguyên (kể cả âm) là vị trí cột, còn lại là tên cột
    text = str(value).strip()
    try:
        return int(text)
    except ValueError:
        return text


# ===== RUN CONFIG =====

@dataclass
class RunConfig:
    """
    Cấu hình đầy đủ của một lệnh CLI

    Attributes:
        command: oversample | evaluate | rank | variants
        inputs: CSV đầu vào (dataset, hoặc bảng score cho lệnh rank)
        output: thư mục kết quả
        method, k, irt, knn, de, n, m_neighbors, on_empty: tham số oversampler
        seed: seed gốc
        folds, repeats, jobs, grid, methods, classifiers, metrics,
        with_variants, cache, clear_cache: tham số của lệnh evaluate
        factors: hệ số undersampling cho lệnh variants
    """
    command: str
    inputs: List[str] = field(default_factory=list)
    output: str = str(settings.OUTPUT_DIR)
    label_column: Union[str, int] = -1
    minority_label: Optional[str] = None
    one_vs_rest: bool = False
    scale: bool = False
    method: str = 'kmeans-smote'
    k: int = 2
    irt: float = settings.DEFAULT_IRT
    knn: Union[int, str] = settings.DEFAULT_KNN
    de: Union[float, str] = settings.AUTO_LITERAL
    n: Optional[int] = None
    m_neighbors: Optional[int] = None
    on_empty: str = 'error'
    seed: int = settings.DEFAULT_SEED
    folds: int = settings.DEFAULT_FOLDS
    repeats: int = settings.DEFAULT_REPEATS
    jobs: int = settings.MAX_WORKERS
    grid: str = 'desk'
    methods: List[str] = field(default_factory=list)
    classifiers: List[str] = field(default_factory=list)
    metrics: List[str] = field(default_factory=lambda: list(settings.DEFAULT_METRICS))
    with_variants: bool = False
    cache: bool = True
    clear_cache: bool = False
    factors: List[float] = field(default_factory=lambda: list(settings.UNDERSAMPLING_FACTORS))
    log_level: str = settings.LOG_LEVEL
    config_file: Optional[str] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Kiểm tra ràng buộc giữa các trường

        Raises:
            ConfigError
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.method not in settings.OVERSAMPLING_METHODS:
            raise ConfigError(
                f"unknown method {self.method!r}; expected one of {settings.OVERSAMPLING_METHODS}"
            )
        unknown = [m for m in self.methods if m not in settings.OVERSAMPLING_METHODS]
        if unknown:
            raise ConfigError(f"unknown method(s) in methods: {unknown}")
        if self.grid not in ('desk', 'full'):
            raise ConfigError(f"grid must be 'desk' or 'full', got {self.grid!r}")
        if self.on_empty not in ('error', 'smote'):
            raise ConfigError(f"on_empty must be 'error' or 'smote', got {self.on_empty!r}")
        if self.clear_cache and not self.cache:
            raise ConfigError("clear_cache needs the cache; drop --no-cache")
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if self.n is not None and self.n < 0:
            raise ConfigError(f"n must be >= 0, got {self.n}")
        if self.m_neighbors is not None and self.m_neighbors < 1:
            raise ConfigError(f"m_neighbors must be >= 1, got {self.m_neighbors}")
        if any(f < 1 for f in self.factors):
            raise ConfigError(f"undersampling factors must be >= 1, got {self.factors}")
        if not self.inputs:
            raise ConfigError(f"{self.command} needs at least one input file")
        missing = [p for p in self.inputs if not Path(p).exists()]
        if missing:
            raise ConfigError(f"input file(s) not found: {missing}")

    @property
    def output_dir(self) -> Path:
        return Path(self.output)

    def oversampler_params(self) -> Dict[str, Any]:
        """Tham số hợp lệ cho phương pháp đã chọn"""
        if self.method in ('none',):
            return {}
        params: Dict[str, Any] = {}
        if self.n is not None:
            params['n'] = self.n
        if self.method == 'random':
            return params
        params['knn'] = self.knn
        if self.method in ('borderline1', 'borderline2'):
            if self.m_neighbors is not None:
                params['m_neighbors'] = self.m_neighbors
        elif self.method == 'kmeans-smote':
            params.update(k=self.k, irt=self.irt, de=self.de, on_empty=self.on_empty)
        return params

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        # JSON không có Infinity
        if math.isinf(data['irt']):
            data['irt'] = settings.INFINITY_LITERAL
        return data

    # ===== LOADING =====

    @classmethod
    def from_sources(
        cls,
        command: str,
        flags: Optional[Mapping[str, Any]] = None,
        config_file: Optional[Union[str, Path]] = None,
    ) -> 'RunConfig':
        """
        Gộp theo thứ tự ưu tiên: flags > file cấu hình > mặc định

        Args:
            command: tên lệnh
            flags: giá trị từ dòng lệnh (None = không đặt)
            config_file: file key = value

        Raises:
            ConfigError
        """
        values: Dict[str, Any] = {}
        if config_file is not None:
            values.update(load_config_file(config_file))
            values['config_file'] = str(config_file)
        for key, value in (flags or {}).items():
            if value is not None:
                values[key] = value
        values.pop('command', None)
        return cls(command=command, **_coerce(values))


# Parser cho từng trường khi giá trị đến từ file (dạng chuỗi)
FIELD_PARSERS: Dict[str, Callable[[Any], Any]] = {
    'inputs': parse_list,
    'output': str,
    'label_column': _label_column,
    'minority_label': str,
    'one_vs_rest': parse_bool,
    'scale': parse_bool,
    'method': lambda v: str(v).strip().lower(),
    'k': _positive_int('k'),
    'irt': parse_irt,
    'knn': parse_knn,
    'de': parse_de,
    'n': _optional_int('n'),
    'm_neighbors': _optional_int('m_neighbors'),
    'on_empty': lambda v: str(v).strip().lower(),
    'seed': int,
    'folds': _positive_int('folds'),
    'repeats': _positive_int('repeats'),
    'jobs': _positive_int('jobs'),
    'grid': lambda v: str(v).strip().lower(),
    'methods': parse_list,
    'classifiers': parse_list,
    'metrics': parse_list,
    'with_variants': parse_bool,
    'cache': parse_bool,
    'clear_cache': parse_bool,
    'factors': lambda v: [float(x) for x in parse_list(v)],
    'log_level': lambda v: str(v).strip().upper(),
    'config_file': str,
}


def _coerce(values: Mapping[str, Any]) -> Dict[str, Any]:
    known = {f.name for f in fields(RunConfig)}
    coerced = {}
    for key, value in values.items():
        if key not in known:
            raise ConfigError(f"unknown configuration key {key!r}")
        try:
            coerced[key] = FIELD_PARSERS[key](value)
        except ConfigError:
            raise
        except (TypeError, ValueError) as e:
            raise ConfigError(f"invalid value for {key}: {value!r} ({e})") from e
    return coerced


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Đọc file cấu hình phẳng dạng ``key = value`` (cú pháp .env)

    Tên key không phân biệt hoa thường, '-' tương đương '_'.

    Example:
        >>> load_config_file('run.cfg')
        {'method': 'kmeans-smote', 'k': '20', 'irt': 'inf'}
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")

    raw = dotenv_values(path, interpolate=False)
    values = {}
    for key, value in raw.items():
        if value is None:
            raise ConfigError(f"{path}: key {key!r} has no value")
        values[key.strip().lower().replace('-', '_')] = value

    logger.debug(f"Đã load {len(values)} giá trị cấu hình từ {path}")
    return values


# ===== EXPORT =====
__all__ = [
    'COMMANDS',
    'ConfigError',
    'RunConfig',
    'FIELD_PARSERS',
    'load_config_file',
    'parse_irt',
    'parse_knn',
    'parse_de',
    'parse_bool',
    'parse_list',
]
