"""
File chính để khởi chạy công cụ dòng lệnh kmeans-smote

Example:
    python main.py oversample data/ecoli.csv --method kmeans-smote --k 1 --irt inf --seed 7 -o out/
    python main.py evaluate data/*.csv --grid desk --jobs 4 -o report/
"""

import sys

from cli import main

if __name__ == '__main__':
    sys.exit(main())
