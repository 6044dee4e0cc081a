"""
Formatierungs-Utilities für das Display-System.
"""

import math
from typing import Any


class Formatter:
    """Formatiert Kennzahlen für die Anzeige"""

    def __init__(self, significant_digits: int = 6):
        """
        Initialisiert den Formatter.

        Args:
            significant_digits: Signifikante Stellen für Gleitkommazahlen
        """
        self.significant_digits = significant_digits

    def format_value(self, value: Any) -> str:
        """
        Formatiert einen Kennzahlwert.

        Args:
            value: Zahl, bool, String oder None

        Returns:
            Formatierter String
        """
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "ja" if value else "nein"
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            if math.isnan(value):
                return "n/a"
            return f"{value:.{self.significant_digits}g}"
        return str(value)

    def format_check(self, passed: bool) -> str:
        """Rich-Markup für eine Prüfung"""
        return "[green]bestanden[/green]" if passed else "[bold red]verfehlt[/bold red]"
