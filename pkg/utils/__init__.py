"""
Module utils chứa các tiện ích và helper functions
"""

from .logger import (
    get_logger,
    setup_logging,
    log_exception,
    LoggerContext
)
from .random_streams import stable_hash, make_rng, sampling_rng, substream_seed


# Lazy import: file_io pulls in pandas
def __getattr__(name):
    if name in ('write_json', 'read_json', 'write_frame', 'atomic_path', 'OutputWriteError'):
        from . import file_io
        return getattr(file_io, name)
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")


__all__ = [
    'get_logger',
    'setup_logging',
    'log_exception',
    'LoggerContext',
    'stable_hash',
    'make_rng',
    'sampling_rng',
    'substream_seed',
    'write_json',
    'read_json',
    'write_frame',
    'atomic_path',
    'OutputWriteError'
]
