"""
Tệp cấu hình chính cho thư viện k-means SMOTE
Chứa các hằng số, đường dẫn và giá trị mặc định của thuật toán
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Tải biến môi trường từ file .env
load_dotenv()


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(name, str(default)))


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(name, str(default)))


# ===== CẤU HÌNH ỨNG DỤNG =====

APP_TITLE = 'kmeans-smote'
APP_VERSION = '1.0.0'

# Seed mặc định cho mọi thao tác ngẫu nhiên
DEFAULT_SEED = _env_int('KMS_SEED', 0)

# Số worker tối đa khi chạy đánh giá song song
MAX_WORKERS = _env_int('KMS_MAX_WORKERS', 1)


# ===== CẤU HÌNH K-MEANS =====

KMEANS_MAX_ITER = _env_int('KMS_KMEANS_MAX_ITER', 300)

# Ngưỡng dịch chuyển centroid lớn nhất
KMEANS_TOL = _env_float('KMS_KMEANS_TOL', 1e-4)


# ===== CẤU HÌNH OVERSAMPLING =====

DEFAULT_KNN = 5

# Imbalance ratio threshold mặc định (cụm có >= 50% minority)
DEFAULT_IRT = 1.0

# Khoảng cách trung bình bằng 0 được thay bằng epsilon
ZERO_DISTANCE_EPSILON = 1e-12

# Các giá trị literal cho CLI
INFINITY_LITERAL = 'inf'
ALL_LITERAL = 'all'
AUTO_LITERAL = 'auto'

OVERSAMPLING_METHODS = [
    'none',
    'random',
    'smote',
    'borderline1',
    'borderline2',
    'kmeans-smote',
]


# ===== CẤU HÌNH CLASSIFIER =====

LOGREG_MAX_EPOCHS = 500
LOGREG_LEARNING_RATE = 0.1
LOGREG_L2 = 1e-4
LOGREG_TOL = 1e-6

# Ngưỡng phân loại nhị phân (score > 0.5 => minority)
DECISION_THRESHOLD = 0.5


# ===== CẤU HÌNH ĐÁNH GIÁ =====

DEFAULT_FOLDS = 5
DEFAULT_REPEATS = 5

# Mức ý nghĩa cho kiểm định Friedman
SIGNIFICANCE_LEVEL = 0.05

DEFAULT_METRICS = ['g_mean', 'f1', 'auprc']


# ===== CẤU HÌNH DỮ LIỆU =====

# Hệ số undersampling để tạo thêm dataset
UNDERSAMPLING_FACTORS = [2, 4, 6, 10, 15, 20]

# Không tạo biến thể nếu minority < 8
MIN_MINORITY_AFTER_UNDERSAMPLING = 8

CSV_SEPARATOR = ','
CSV_ENCODING = 'utf-8'


# ===== CẤU HÌNH ĐƯỜNG DẪN =====

# Thư mục gốc của dự án
BASE_DIR = Path(__file__).parent.parent

# Thư mục lưu kết quả
OUTPUT_FOLDER = os.getenv('KMS_OUTPUT_FOLDER', 'outputs')
OUTPUT_DIR = BASE_DIR / OUTPUT_FOLDER

# Thư mục log
LOG_DIR = Path(os.getenv('KMS_LOG_DIR', str(BASE_DIR / 'logs')))


# ===== CẤU HÌNH LOGGING =====

# Cấp độ log
LOG_LEVEL = os.getenv('KMS_LOG_LEVEL', 'INFO')  # DEBUG, INFO, WARNING, ERROR, CRITICAL

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

LOG_FILE = 'kmeans_smote.log'

LOG_FILE_PATH = LOG_DIR / LOG_FILE

# Kích thước tối đa của file log (bytes) - 10MB
MAX_LOG_SIZE = 10 * 1024 * 1024

LOG_BACKUP_COUNT = 5


# ===== EXPORT =====
__all__ = [
    'APP_TITLE',
    'APP_VERSION',
    'DEFAULT_SEED',
    'MAX_WORKERS',
    'KMEANS_MAX_ITER',
    'KMEANS_TOL',
    'DEFAULT_KNN',
    'DEFAULT_IRT',
    'ZERO_DISTANCE_EPSILON',
    'INFINITY_LITERAL',
    'ALL_LITERAL',
    'AUTO_LITERAL',
    'OVERSAMPLING_METHODS',
    'LOGREG_MAX_EPOCHS',
    'LOGREG_LEARNING_RATE',
    'LOGREG_L2',
    'LOGREG_TOL',
    'DECISION_THRESHOLD',
    'DEFAULT_FOLDS',
    'DEFAULT_REPEATS',
    'SIGNIFICANCE_LEVEL',
    'DEFAULT_METRICS',
    'UNDERSAMPLING_FACTORS',
    'MIN_MINORITY_AFTER_UNDERSAMPLING',
    'CSV_SEPARATOR',
    'CSV_ENCODING',
    'BASE_DIR',
    'OUTPUT_DIR',
    'LOG_DIR',
    'LOG_LEVEL',
    'LOG_FORMAT',
    'LOG_FILE',
    'LOG_FILE_PATH',
    'MAX_LOG_SIZE',
    'LOG_BACKUP_COUNT',
]
