"""
Ausgabe-System (CSV-Artefakte) für das Stable-CIR Labor.
"""

from .core.log_entry import LogEntry, LogType
from .core.log_manager import LogManager
from .loggers.result_logger import ResultLogger

__all__ = [
    "LogEntry",
    "LogType",
    "LogManager",
    "ResultLogger"
]
