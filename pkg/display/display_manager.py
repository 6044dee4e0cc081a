"""
Display Manager für zentrale Verwaltung aller Display-Module.
"""

import logging
from typing import Any, Optional

from rich.console import Console


class DisplayManager:
    """Verwaltet alle Display-Module zentral"""

    def __init__(self, config: Any, console: Optional[Console] = None):
        """
        Initialisiert den DisplayManager.

        Args:
            config: Konfigurationsobjekt
            console: Optionale Rich Console (z.B. für Tests)
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

        from .displays import SummaryDisplay
        self.summary = SummaryDisplay(config, console)

    @property
    def enabled(self) -> bool:
        return bool(self.config.display.enabled)

    def show_run_summary(self, result: Any) -> None:
        """
        Zeigt die Zusammenfassung eines Laufs (auch bei verfehlter Akzeptanz).

        Args:
            result: RunResult
        """
        if not self.enabled:
            return
        try:
            self.summary.display(result)
        except Exception as e:
            self.logger.error(f"Fehler bei der Anzeige: {e}")
