"""
File Handler für das Ausgabe-System.
"""

import logging
from pathlib import Path
from typing import Any, Dict

from ..core.interfaces import FileManager


class FileHandler(FileManager):
    """Verwaltet die Ausgabepfade eines Laufs"""

    # log_types mit eigener Nachbardatei <stem>_<suffix>.csv
    SIDE_FILES = {
        'summary': 'summary',
    }

    def __init__(self, config: Any):
        """
        Initialisiert den FileHandler.

        Args:
            config: Konfigurationsobjekt mit output.path
        """
        self.config = config
        self.logger = logging.getLogger(__name__)
        self.base_path = Path(config.output.path)
        self._current_paths: Dict[str, Path] = {}

    def get_current_path(self, log_type: str) -> Path:
        """
        Gibt den Pfad für einen Log-Typ zurück.

        Das Haupt-Artefakt jedes Befehls landet unter output.path,
        Nebenartefakte neben dieser Datei.

        Args:
            log_type: Typ des Logs

        Returns:
            Pfad zur CSV-Datei
        """
        if log_type in self._current_paths:
            return self._current_paths[log_type]

        suffix = self.SIDE_FILES.get(log_type)
        if suffix is None:
            path = self.base_path
        else:
            path = self.base_path.with_name(f"{self.base_path.stem}_{suffix}.csv")

        self._current_paths[log_type] = path
        self.logger.debug(f"Ausgabepfad für {log_type}: {path}")
        return path
