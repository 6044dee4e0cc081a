"""
CSV Writer für das Ausgabe-System.
"""

from typing import Any, Dict, List, Optional

from utils.csv_utils import CSVWriter as CSVFileWriter
from .base_writer import BaseWriter


class CSVWriter(BaseWriter):
    """Writer für CSV-Artefakte (eine Datei pro log_type)"""

    def __init__(self, config: Any, file_manager: Any):
        """
        Initialisiert den CSV Writer.

        Args:
            config: Konfigurationsobjekt
            file_manager: FileManager für Pfadverwaltung
        """
        super().__init__(config)
        self.file_manager = file_manager
        self.file_writer = CSVFileWriter()

        # Gesamter Inhalt je log_type; jede Datei wird bei jedem Flush komplett neu geschrieben
        self._headers: Dict[str, List[str]] = {}
        self._rows: Dict[str, List[List[str]]] = {}
        self._info_lines: Dict[str, List[str]] = {}

    def write(self, data: List[List[str]], metadata: Optional[Dict[str, Any]] = None) -> bool:
        """
        Puffert Zeilen für einen log_type.

        Args:
            data: Formatierte Zeilen
            metadata: Metadaten mit log_type und optional info_lines

        Returns:
            True bei Erfolg
        """
        if not metadata or 'log_type' not in metadata:
            self.logger.error("Keine log_type in Metadaten")
            return False
        return super().write(data, metadata)

    def write_header(self, headers: List[str], metadata: Optional[Dict[str, Any]] = None) -> bool:
        """
        Legt den Spaltenkopf eines log_type fest.

        Args:
            headers: Header-Liste
            metadata: Metadaten mit log_type

        Returns:
            True bei Erfolg
        """
        if not metadata or 'log_type' not in metadata:
            return False
        self._headers[metadata['log_type']] = list(headers)
        return True

    def flush(self) -> bool:
        """
        Schreibt alle gepufferten log_types in ihre Dateien.

        Returns:
            True bei Erfolg
        """
        if not self._buffer:
            return True

        touched: List[str] = []
        for entry in self._buffer:
            log_type = entry['metadata']['log_type']
            self._rows.setdefault(log_type, []).extend(entry['data'])
            if 'info_lines' in entry['metadata']:
                self._info_lines[log_type] = list(entry['metadata']['info_lines'])
            if log_type not in touched:
                touched.append(log_type)
        self._buffer.clear()

        success = True
        for log_type in touched:
            if not self._write_file(log_type):
                success = False
        return success

    def _write_file(self, log_type: str) -> bool:
        """
        Schreibt die vollständige Datei eines log_type.

        Args:
            log_type: Typ des Logs

        Returns:
            True bei Erfolg
        """
        filepath = self.file_manager.get_current_path(log_type)
        headers = self._headers.get(log_type)
        if headers is None:
            self.logger.error(f"Kein Header für {log_type} gesetzt")
            return False
        return self.file_writer.write_file(
            filepath, headers, self._rows.get(log_type, []), self._info_lines.get(log_type)
        )

    def written_paths(self) -> Dict[str, Any]:
        """Bisher geschriebene Pfade je log_type"""
        return {log_type: self.file_manager.get_current_path(log_type) for log_type in self._rows}
