"""
Logging-Koordination für das Stable-CIR Labor.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from log_system import LogManager, LogType, ResultLogger
from log_system.formatters import ResultFormatter
from log_system.handlers import FileHandler
from log_system.writers import CSVWriter

from .core.density import CDF_HEADER, CSV_HEADER
from .core.ergodicity import BOUNDS_HEADER, DRIFT_HEADER, TV_HEADER
from .core.simulation import ENSEMBLE_HEADER, SUMMARY_HEADER
from .core.transforms import LAPLACE_HEADER

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

HEADERS: Dict[LogType, List[str]] = {
    LogType.LAPLACE: LAPLACE_HEADER,
    LogType.DENSITY: CSV_HEADER,
    LogType.CDF: CDF_HEADER,
    LogType.ENSEMBLE: ENSEMBLE_HEADER,
    LogType.SUMMARY: SUMMARY_HEADER,
    LogType.DRIFT: DRIFT_HEADER,
    LogType.TV_DECAY: TV_HEADER,
    LogType.BOUNDS: BOUNDS_HEADER,
}


def setup_logging(level: str = "WARNING", log_file: str = "") -> None:
    """
    Konfiguriert den Root-Logger (stderr und optional eine Datei).

    Args:
        level: Log-Level als Name
        log_file: Pfad zur Log-Datei, leer für keine Datei
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Entferne alle bestehenden Handler
    root_logger.handlers = []

    formatter = logging.Formatter(LOG_FORMAT)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    console_handler.setLevel(level)
    root_logger.addHandler(console_handler)

    if log_file:
        try:
            file_handler = logging.FileHandler(log_file)
            file_handler.setFormatter(formatter)
            file_handler.setLevel(level)
            root_logger.addHandler(file_handler)
        except IOError as e:
            root_logger.warning(f"Konnte Log-Datei nicht erstellen: {e}")


class LoggingCoordinator:
    """Koordiniert System-Logging und CSV-Artefakte eines Laufs"""

    def __init__(self, config: Any):
        """
        Initialisiert den LoggingCoordinator.

        Args:
            config: RunConfig
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

        self._init_logging_system()

    def _init_logging_system(self) -> None:
        """Initialisiert die Artefakt-Pipeline"""
        self.log_manager = LogManager(self.config)
        self.file_handler = FileHandler(self.config)

        # Ein Formatter je Artefakt-Typ
        for log_type, headers in HEADERS.items():
            self.log_manager.register_formatter(log_type.value, ResultFormatter(self.config, headers))

        self.csv_writer = CSVWriter(self.config, self.file_handler)
        self.log_manager.register_writer('csv', self.csv_writer)

        self.result_logger = ResultLogger(self.log_manager)
        self.logger.debug("Ausgabe-System initialisiert")

    def setup_system_logging(self) -> None:
        """Konfiguriert das System-Logging aus config.logging"""
        setup_logging(self.config.logging.log_level, self.config.logging.log_file)

    def session_info(self, title: str, **kwargs: Any) -> List[str]:
        """
        Kommentarkopf mit Version, aufgelöster Konfiguration und Ergebnisfeldern.

        Args:
            title: Titel des Artefakts
            **kwargs: Zusätzliche key=value Felder (z.B. norm_defect, slope)

        Returns:
            Kommentarzeilen
        """
        from . import __version__
        formatter = self.log_manager.formatters[LogType.LAPLACE.value]
        return formatter.get_session_info(title, __version__, self.config.to_lines(), **kwargs)

    def log_result(self, log_type: LogType, rows: Sequence[Sequence[Any]],
                   info_lines: Optional[List[str]] = None) -> bool:
        """
        Loggt Ergebniszeilen eines Artefakt-Typs.

        Args:
            log_type: Artefakt-Typ
            rows: Datenzeilen
            info_lines: Kommentarkopf

        Returns:
            True bei Erfolg
        """
        return self.result_logger.log(log_type, rows, info_lines)

    def written_paths(self) -> Dict[str, Path]:
        """Pfade aller bisher erzeugten Artefakte"""
        return self.csv_writer.written_paths()

    def close(self) -> bool:
        """Schreibt alle ausstehenden Artefakte"""
        success = self.log_manager.close_all()
        self.logger.info("Ausgabe-System geschlossen")
        return success

    def log_startup_info(self) -> None:
        """Loggt die wichtigsten Einstellungen beim Start"""
        params = self.config.params
        self.logger.info("=" * 60)
        self.logger.info(f"Befehl: {self.config.command}")
        self.logger.info(
            f"Modell: a={params.a}, b={params.b}, alpha={params.alpha}, "
            f"m={params.m}, theta={params.theta}"
        )
        self.logger.info(f"Ausgabe: {self.config.output.path}")
        self.logger.info("=" * 60)
