"""
Datenmodelle für Ergebnis-Einträge.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List


class LogType(Enum):
    """Verfügbare Artefakt-Typen"""
    LAPLACE = "laplace"
    DENSITY = "density"
    CDF = "cdf"
    ENSEMBLE = "ensemble"
    SUMMARY = "summary"
    DRIFT = "drift"
    TV_DECAY = "tv_decay"
    BOUNDS = "bounds"


@dataclass
class LogEntry:
    """Ein Block von Ergebniszeilen eines Artefakt-Typs (ohne Zeitstempel)"""
    log_type: LogType
    data: List[List[Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
