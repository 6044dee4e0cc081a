"""
Basis-Formatter für das Ausgabe-System.
"""

from typing import Any, List, Optional, Sequence

from utils.csv_utils import CSVFormatter
from ..core.interfaces import LogFormatter


class BaseFormatter(LogFormatter):
    """Basis-Implementierung für alle Formatter"""

    def __init__(self, config: Any = None):
        """
        Initialisiert den Formatter.

        Args:
            config: Konfigurationsobjekt
        """
        self.config = config
        self.csv = CSVFormatter(config)

    def format_number(self, value: Optional[float]) -> str:
        """
        Formatiert eine Zahl verlustfrei.

        Args:
            value: Zu formatierender Wert

        Returns:
            Formatierter String
        """
        return self.csv.format_number(value)

    def format_row(self, row: Sequence[Any]) -> List[str]:
        """Formatiert alle Zellen einer Zeile"""
        return [self.csv.format_cell(value) for value in row]

    def format(self, data: Any) -> List[List[str]]:
        return [self.format_row(row) for row in data]

    def get_headers(self) -> List[str]:
        return []

    def get_session_info(self, title: str, version: str,
                         config_lines: Sequence[str] = (), **kwargs: Any) -> List[str]:
        """
        Erstellt die Kommentarzeilen des CSV-Kopfes.

        Args:
            title: Titel der Ausgabe
            version: Versionsstring
            config_lines: Aufgelöste Konfiguration
            **kwargs: Zusätzliche Ergebnisfelder

        Returns:
            Liste mit Info-Zeilen
        """
        return self.csv.create_session_info(title, version, config_lines, **kwargs)
