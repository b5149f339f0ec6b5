"""
Module quản lý logging cho toàn bộ thư viện
Cung cấp các hàm để ghi log với nhiều cấp độ khác nhau
"""

import logging
import sys
import time
from pathlib import Path
from logging.handlers import RotatingFileHandler
from typing import Optional

# Dictionary lưu trữ các logger đã tạo để tránh tạo duplicate
_loggers = {}


# Lazy import settings to avoid circular dependency
def _get_settings():
    from config import settings
    return settings


def _file_handler(log_file: Path, formatter: logging.Formatter, level: int) -> RotatingFileHandler:
    settings = _get_settings()
    log_file.parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        filename=log_file,
        maxBytes=settings.MAX_LOG_SIZE,
        backupCount=settings.LOG_BACKUP_COUNT,
        encoding='utf-8'
    )
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def get_logger(name: str = __name__) -> logging.Logger:
    """
    Lấy hoặc tạo logger instance với tên được chỉ định

    Args:
        name (str): Tên của logger, thường là __name__ của module

    Returns:
        logging.Logger: Logger instance đã được cấu hình

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("Clustering finished")
    """
    if name in _loggers:
        return _loggers[name]

    logger = logging.getLogger(name)

    # Chỉ cấu hình nếu logger chưa có handler
    if not logger.handlers:
        settings = _get_settings()
        log_level = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
        logger.setLevel(log_level)

        formatter = logging.Formatter(settings.LOG_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')

        # ===== Console Handler =====
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(log_level)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

        # ===== File Handler =====
        try:
            logger.addHandler(_file_handler(settings.LOG_FILE_PATH, formatter, log_level))
        except Exception as e:
            # Nếu không thể tạo file handler, chỉ log ra console
            logger.warning(f"Không thể tạo file handler: {e}")

        # Ngăn log propagate lên parent logger
        logger.propagate = False

    _loggers[name] = logger
    return logger


def setup_logging(log_level: Optional[str] = None) -> None:
    """
    Đặt lại cấp độ log cho tất cả logger đã tạo (gọi một lần từ CLI)

    Args:
        log_level (str, optional): DEBUG, INFO, WARNING, ERROR, CRITICAL
    """
    if log_level is None:
        log_level = _get_settings().LOG_LEVEL

    numeric_level = getattr(logging, log_level.upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError(f"Unknown log level: {log_level}")

    _get_settings().LOG_LEVEL = log_level.upper()
    for logger in _loggers.values():
        logger.setLevel(numeric_level)
        for handler in logger.handlers:
            handler.setLevel(numeric_level)

    get_logger(__name__).debug(f"Đã thiết lập logging với level: {log_level}")


def log_exception(logger: logging.Logger, exception: Exception, message: str = None) -> None:
    """
    Log exception với đầy đủ stack trace

    Args:
        logger (logging.Logger): Logger instance
        exception (Exception): Exception cần log
        message (str, optional): Message bổ sung
    """
    if message:
        logger.error(f"{message}: {exception}", exc_info=True)
    else:
        logger.error(f"Exception xảy ra: {exception}", exc_info=True)


class LoggerContext:
    """
    Context manager để log thời gian thực thi của một block code

    Example:
        >>> logger = get_logger(__name__)
        >>> with LoggerContext(logger, "Fit k-means"):
        >>>     model = fit_kmeans(d, k=20)
    """

    def __init__(self, logger: logging.Logger, operation: str, level: int = logging.INFO):
        self.logger = logger
        self.operation = operation
        self.level = level
        self.start_time = None
        self.elapsed = 0.0

    def __enter__(self):
        self.start_time = time.perf_counter()
        self.logger.log(self.level, f"Bắt đầu: {self.operation}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self.start_time

        if exc_type is None:
            self.logger.log(self.level, f"Hoàn thành: {self.operation} (Thời gian: {self.elapsed:.2f}s)")
        else:
            self.logger.error(
                f"Lỗi trong: {self.operation} (Thời gian: {self.elapsed:.2f}s) - {exc_val}"
            )

        # Không suppress exception
        return False


# ===== EXPORT =====
__all__ = [
    'get_logger',
    'setup_logging',
    'log_exception',
    'LoggerContext'
]
