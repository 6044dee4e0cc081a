"""
Formatter für tabellarische Ergebnisse mit festem Spaltenkopf.
"""

from typing import Any, List, Sequence

from .base_formatter import BaseFormatter


class ResultFormatter(BaseFormatter):
    """Formatiert Ergebniszeilen eines Artefakt-Typs"""

    def __init__(self, config: Any, headers: Sequence[str]):
        """
        Initialisiert den ResultFormatter.

        Args:
            config: Konfigurationsobjekt
            headers: Spaltenköpfe in fester Reihenfolge
        """
        super().__init__(config)
        self.headers = list(headers)

    def format(self, data: Any) -> List[List[str]]:
        """
        Formatiert Ergebniszeilen.

        Args:
            data: Zeilen mit genau len(headers) Zellen

        Returns:
            Formatierte Zeilen

        Raises:
            ValueError: Wenn eine Zeile nicht zum Spaltenkopf passt
        """
        rows = []
        for row in data:
            if len(row) != len(self.headers):
                raise ValueError(
                    f"Zeile mit {len(row)} Zellen passt nicht zu {len(self.headers)} Spalten"
                )
            rows.append(self.format_row(row))
        return rows

    def get_headers(self) -> List[str]:
        return list(self.headers)
