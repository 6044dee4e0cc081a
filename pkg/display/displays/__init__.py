"""Display-Module für verschiedene Ansichten."""

from .summary_display import SummaryDisplay

__all__ = [
    "SummaryDisplay"
]
