"""
Result Logger - Orchestriert das Schreiben von Ergebnis-Artefakten.
"""

import logging
from typing import Any, List, Optional, Sequence

from ..core.log_entry import LogEntry, LogType
from ..core.log_manager import LogManager


class ResultLogger:
    """Logger für Ergebniszeilen aller Befehle"""

    def __init__(self, log_manager: LogManager):
        """
        Initialisiert den ResultLogger.

        Args:
            log_manager: Zentraler LogManager
        """
        self.log_manager = log_manager
        self.logger = logging.getLogger(__name__)

    def log(self, log_type: LogType, rows: Sequence[Sequence[Any]],
            info_lines: Optional[List[str]] = None) -> bool:
        """
        Loggt Ergebniszeilen.

        Args:
            log_type: Artefakt-Typ
            rows: Zeilen passend zum Spaltenkopf des Typs
            info_lines: Kommentarzeilen für den Dateikopf

        Returns:
            True bei Erfolg
        """
        metadata = {}
        if info_lines is not None:
            metadata['info_lines'] = info_lines
        entry = LogEntry(log_type=log_type, data=[list(row) for row in rows], metadata=metadata)
        return self.log_manager.log(entry)
