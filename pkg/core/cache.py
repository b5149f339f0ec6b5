"""
Module cache kết quả cho experiment runs
Lưu kết quả từng task (dataset x oversampler x repeat x fold) vào SQLite để
chạy lại không phải tính lại
"""

import json
import sqlite3
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from utils import get_logger

# Khởi tạo logger
logger = get_logger(__name__)

CACHE_FILE = 'cells.sqlite'

# Phiên bản schema hiện tại
CURRENT_SCHEMA_VERSION = 1


class ResultCache:
    """
    Cache kết quả theo key (substream id) -> payload JSON

    Attributes:
        db_path (Path): Đường dẫn đến file SQLite

    Example:
        >>> cache = ResultCache(Path('out/cells.sqlite'))
        >>> cache.put('ecoli|smote(knn=5)|0|3', {'status': 'success', 'scores': {...}})
        >>> cache.get('ecoli|smote(knn=5)|0|3')
    """

    def __init__(self, db_path: Union[str, Path]):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

        logger.debug(f"Khởi tạo ResultCache với database: {self.db_path}")
        self.init_database()

    @classmethod
    def in_directory(cls, directory: Union[str, Path]) -> 'ResultCache':
        return cls(Path(directory) / CACHE_FILE)

    @contextmanager
    def get_connection(self):
        """
        Context manager quản lý connection, tự động commit và close

        Yields:
            sqlite3.Connection
        """
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        try:
            yield conn
            conn.commit()
        except Exception as e:
            conn.rollback()
            logger.error(f"Lỗi cache transaction: {e}")
            raise
        finally:
            conn.close()

    def init_database(self):
        """Tạo bảng nếu chưa tồn tại"""
        with self.get_connection() as conn:
            cursor = conn.cursor()

            cursor.execute("""
                CREATE TABLE IF NOT EXISTS schema_version (
                    version INTEGER PRIMARY KEY,
                    applied_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            # ===== BẢNG CELLS =====
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS cells (
                    key TEXT PRIMARY KEY,
                    status TEXT NOT NULL,
                    payload TEXT NOT NULL,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            cursor.execute("SELECT version FROM schema_version ORDER BY version DESC LIMIT 1")
            row = cursor.fetchone()
            if row is None:
                cursor.execute(
                    "INSERT INTO schema_version (version) VALUES (?)",
                    (CURRENT_SCHEMA_VERSION,)
                )
            elif row[0] != CURRENT_SCHEMA_VERSION:
                # Schema khác: bỏ kết quả cũ thay vì migrate
                logger.warning(
                    f"Cache schema {row[0]} != {CURRENT_SCHEMA_VERSION}, xóa cache cũ"
                )
                cursor.execute("DELETE FROM cells")
                cursor.execute("DELETE FROM schema_version")
                cursor.execute(
                    "INSERT INTO schema_version (version) VALUES (?)",
                    (CURRENT_SCHEMA_VERSION,)
                )

    # ===== READ / WRITE =====

    def get(self, key: str) -> Optional[Dict[str, Any]]:
        """Payload đã lưu cho ``key``, hoặc None"""
        with self.get_connection() as conn:
            row = conn.execute("SELECT payload FROM cells WHERE key = ?", (key,)).fetchone()

        if row is None:
            self.misses += 1
            return None
        self.hits += 1
        return json.loads(row['payload'])

    def put(self, key: str, payload: Dict[str, Any]) -> None:
        """Lưu (hoặc ghi đè) payload cho ``key``"""
        self.put_many([(key, payload)])

    def put_many(self, items: Iterable) -> int:
        """Lưu nhiều payload trong một transaction"""
        rows = [
            (key, payload.get('status', 'success'), json.dumps(payload, sort_keys=True))
            for key, payload in items
        ]
        with self.get_connection() as conn:
            conn.executemany(
                "INSERT OR REPLACE INTO cells (key, status, payload) VALUES (?, ?, ?)",
                rows
            )
        return len(rows)

    # ===== STATISTICS & UTILITIES =====

    def __len__(self) -> int:
        with self.get_connection() as conn:
            return conn.execute("SELECT COUNT(*) FROM cells").fetchone()[0]

    def get_statistics(self) -> Dict[str, Any]:
        """Số cell theo status cùng số hit/miss trong phiên này"""
        with self.get_connection() as conn:
            rows = conn.execute("SELECT status, COUNT(*) FROM cells GROUP BY status").fetchall()
        return {
            'cells_by_status': {row[0]: row[1] for row in rows},
            'hits': self.hits,
            'misses': self.misses,
        }

    def clear(self) -> int:
        """Xóa tất cả cells, trả về số lượng đã xóa"""
        with self.get_connection() as conn:
            deleted = conn.execute("DELETE FROM cells").rowcount
        logger.info(f"Đã xóa {deleted} cell(s) khỏi cache")
        return deleted


# ===== EXPORT =====
__all__ = ['ResultCache', 'CACHE_FILE', 'CURRENT_SCHEMA_VERSION']
