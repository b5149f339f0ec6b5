"""
Module cấu hình cho thư viện k-means SMOTE
"""

from .settings import *


# Lazy import: run_config phụ thuộc utils.logger, utils lại đọc settings
def __getattr__(name):
    if name in ('RunConfig', 'ConfigError', 'load_config_file'):
        from . import run_config
        return getattr(run_config, name)
    raise AttributeError(f"module '{__name__}' has no attribute '{name}'")


__all__ = ['RunConfig', 'ConfigError', 'load_config_file']
