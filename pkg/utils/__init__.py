"""
Utils Package für das Stable-CIR Labor.
"""

from .csv_utils import CSVFormatter, CSVWriter

__all__ = [
    "CSVFormatter",
    "CSVWriter"
]
