"""Core-Komponenten des Display-Systems."""

from .base_display import BaseDisplay
from .formatter import Formatter

__all__ = [
    "BaseDisplay",
    "Formatter"
]
