"""
CSV Utilities für das Stable-CIR Labor.
"""

import csv
import logging
import os
import tempfile
import threading
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence


class CSVFormatter:
    """Zentrale Klasse für CSV-Formatierung"""

    def __init__(self, config: Any = None) -> None:
        """
        Initialisiert den CSVFormatter.

        Args:
            config: Konfigurationsobjekt (für Session-Info)
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

    def format_number(self, value: Optional[float]) -> str:
        """
        Formatiert eine Zahl verlustfrei (kürzeste Darstellung, die den
        IEEE-754 Wert exakt wiederherstellt).

        Args:
            value: Zu formatierender Wert

        Returns:
            Formatierter String ("-" für None)
        """
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "1" if value else "0"
        if isinstance(value, int):
            return str(value)
        return repr(float(value))

    def format_cell(self, value: Any) -> str:
        """Formatiert einen beliebigen Zellwert"""
        if isinstance(value, str):
            return value
        if hasattr(value, "item"):
            # numpy-Skalare
            value = value.item()
        return self.format_number(value)

    def create_session_info(self, title: str, version: str,
                            config_lines: Sequence[str] = (), **kwargs: Any) -> List[str]:
        """
        Erstellt Kommentarzeilen für den CSV-Kopf.

        Keine Zeitstempel, damit identische Läufe identische Dateien erzeugen.

        Args:
            title: Titel der Ausgabe
            version: Versionsstring der Bibliothek
            config_lines: Aufgelöste Konfiguration als key=value Zeilen
            **kwargs: Zusätzliche Ergebnisfelder

        Returns:
            Liste mit Kommentarzeilen
        """
        info_lines: List[str] = [f"# {title}", f"# version={version}"]
        info_lines.extend(f"# {line}" for line in config_lines)
        for key, value in kwargs.items():
            info_lines.append(f"# {key}={self.format_cell(value)}")
        return info_lines


class CSVWriter:
    """Thread-safe CSV Writer mit atomarem Ersetzen der Zieldatei"""

    _file_locks: Dict[str, threading.Lock] = {}
    _registry_lock = threading.Lock()

    def __init__(self, delimiter: str = ",", encoding: str = "utf-8") -> None:
        """
        Initialisiert den CSVWriter.

        Args:
            delimiter: Spaltentrenner
            encoding: Dateikodierung
        """
        self.delimiter = delimiter
        self.encoding = encoding
        self.logger = logging.getLogger(__name__)

    @classmethod
    def _lock_for(cls, filepath: Path) -> threading.Lock:
        key = str(filepath.resolve())
        with cls._registry_lock:
            if key not in cls._file_locks:
                cls._file_locks[key] = threading.Lock()
            return cls._file_locks[key]

    def write_file(self, filepath: Path, headers: List[str], rows: Iterable[List[str]],
                   info_lines: Optional[List[str]] = None) -> bool:
        """
        Schreibt Kommentarkopf, Spaltenkopf und Zeilen in eine temporäre
        Nachbardatei und ersetzt damit die Zieldatei.

        Args:
            filepath: Pfad zur CSV-Datei
            headers: Liste mit Header-Spalten
            rows: Bereits formatierte Datenzeilen
            info_lines: Kommentarzeilen (beginnen mit '#')

        Returns:
            True bei Erfolg, False bei Fehler
        """
        filepath = Path(filepath)
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with self._lock_for(filepath):
                fd, tmp_name = tempfile.mkstemp(prefix=f".{filepath.name}.",
                                                dir=str(filepath.parent))
                try:
                    with os.fdopen(fd, "w", newline="", encoding=self.encoding) as f:
                        for line in info_lines or []:
                            f.write(line + "\n")
                        writer = csv.writer(f, delimiter=self.delimiter, lineterminator="\n")
                        writer.writerow(headers)
                        writer.writerows(rows)
                    os.replace(tmp_name, filepath)
                except BaseException:
                    if os.path.exists(tmp_name):
                        os.unlink(tmp_name)
                    raise

            self.logger.debug(f"CSV geschrieben: {filepath}")
            return True

        except OSError as e:
            self.logger.error(f"Fehler beim Schreiben der CSV-Datei {filepath}: {e}")
            return False
