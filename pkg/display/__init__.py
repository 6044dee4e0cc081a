"""
Display Package für das Stable-CIR Labor.
"""

from .display_manager import DisplayManager
from .displays import SummaryDisplay
from .core import BaseDisplay, Formatter

__all__ = [
    # Haupt-Manager
    "DisplayManager",

    # Display-Module
    "SummaryDisplay",

    # Core-Komponenten
    "BaseDisplay",
    "Formatter"
]
