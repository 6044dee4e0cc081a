"""
Abstrakte Interfaces für das Ausgabe-System.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional


class LogFormatter(ABC):
    """Abstrakte Basis für alle Formatter"""

    @abstractmethod
    def format(self, data: Any) -> List[List[str]]:
        """
        Formatiert Ergebnisdaten für die Ausgabe.

        Args:
            data: Zu formatierende Zeilen

        Returns:
            Liste formatierter Zeilen
        """
        pass

    @abstractmethod
    def get_headers(self) -> List[str]:
        """
        Gibt die Spaltenköpfe zurück.

        Returns:
            Liste mit Header-Strings
        """
        pass


class LogWriter(ABC):
    """Abstrakte Basis für alle Writer"""

    @abstractmethod
    def write(self, data: List[List[str]], metadata: Optional[Dict[str, Any]] = None) -> bool:
        """
        Schreibt formatierte Zeilen.

        Args:
            data: Zu schreibende Zeilen
            metadata: Metadaten (log_type, Kommentarzeilen)

        Returns:
            True bei Erfolg, False bei Fehler
        """
        pass

    @abstractmethod
    def write_header(self, headers: List[str], metadata: Optional[Dict[str, Any]] = None) -> bool:
        """
        Legt die Spaltenköpfe für einen Log-Typ fest.

        Args:
            headers: Header-Liste
            metadata: Metadaten mit log_type

        Returns:
            True bei Erfolg, False bei Fehler
        """
        pass

    @abstractmethod
    def flush(self) -> bool:
        """
        Schreibt ausstehende Daten.

        Returns:
            True bei Erfolg
        """
        pass


class FileManager(ABC):
    """Abstrakte Basis für Pfadverwaltung"""

    @abstractmethod
    def get_current_path(self, log_type: str) -> Path:
        """
        Gibt den Ausgabepfad für einen Log-Typ zurück.

        Args:
            log_type: Typ des Logs

        Returns:
            Pfad zur Ausgabedatei
        """
        pass
