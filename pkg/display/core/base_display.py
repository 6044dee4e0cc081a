"""
Basis-Klasse für alle Display-Komponenten.
"""

from abc import ABC, abstractmethod
from typing import Any, Optional

from rich.console import Console

from .formatter import Formatter


class BaseDisplay(ABC):
    """Abstrakte Basis für alle Display-Klassen"""

    def __init__(self, config: Any, console: Optional[Console] = None):
        """
        Initialisiert das Display.

        Args:
            config: Konfigurationsobjekt
            console: Rich Console (Standard: stdout)
        """
        self.config = config
        self.console = console or Console()
        self.formatter = Formatter()

    @abstractmethod
    def display(self, data: Any, **kwargs: Any) -> None:
        """
        Hauptmethode zum Anzeigen der Daten.

        Args:
            data: Anzuzeigende Daten
            **kwargs: Zusätzliche Keyword-Argumente
        """
        pass
