"""Core-Komponenten des Ausgabe-Systems."""

from .interfaces import LogFormatter, LogWriter, FileManager
from .log_entry import LogEntry, LogType
from .log_manager import LogManager

__all__ = [
    "LogFormatter", "LogWriter", "FileManager",
    "LogEntry", "LogType",
    "LogManager"
]
