"""
File output utilities
Atomic writers for CSV and JSON artifacts (temp file in the target
directory, then rename over the destination)
"""

import json
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Union

import numpy as np
import pandas as pd

from .logger import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


class OutputWriteError(OSError):
    """Error while writing an output artifact"""
    pass


@contextmanager
def atomic_path(path: PathLike) -> Iterator[Path]:
    """
    Yield a temporary path next to ``path``; on success it replaces ``path``.

    Example:
        >>> with atomic_path('out/report.json') as tmp:
        >>>     tmp.write_text('{}')
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)

    fd, tmp_name = tempfile.mkstemp(
        prefix=f".{target.name}.",
        suffix='.tmp',
        dir=target.parent
    )
    os.close(fd)
    tmp_path = Path(tmp_name)

    try:
        yield tmp_path
        os.replace(tmp_path, target)
        logger.debug(f"Wrote {target}")
    except Exception as e:
        tmp_path.unlink(missing_ok=True)
        raise OutputWriteError(f"Failed to write {target}: {e}") from e


def _json_default(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(data: Any, path: PathLike) -> Path:
    """
    Write ``data`` as sorted, indented JSON (byte-stable for equal input)

    NaN and infinity raise OutputWriteError; callers map them to None or
    the 'inf' literal first.
    """
    with atomic_path(path) as tmp:
        with open(tmp, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, sort_keys=True, ensure_ascii=False,
                      allow_nan=False, default=_json_default)
            f.write('\n')
    return Path(path)


def read_json(path: PathLike) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    """Write a DataFrame as comma-separated UTF-8 CSV without the index"""
    with atomic_path(path) as tmp:
        frame.to_csv(tmp, index=False, encoding='utf-8', lineterminator='\n')
    return Path(path)


# ===== EXPORT =====
__all__ = [
    'OutputWriteError',
    'atomic_path',
    'write_json',
    'read_json',
    'write_frame',
]
