"""Writer für verschiedene Output-Formate."""

from .base_writer import BaseWriter
from .csv_writer import CSVWriter

__all__ = [
    "BaseWriter",
    "CSVWriter"
]
