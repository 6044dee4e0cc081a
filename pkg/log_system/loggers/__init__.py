"""Logger für Ergebnis-Artefakte."""

from .result_logger import ResultLogger

__all__ = [
    "ResultLogger"
]
