"""Formatter für die Ergebnis-Artefakte."""

from .base_formatter import BaseFormatter
from .result_formatter import ResultFormatter

__all__ = [
    "BaseFormatter",
    "ResultFormatter"
]
