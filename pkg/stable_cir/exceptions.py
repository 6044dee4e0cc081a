"""
Fehlerklassen für das Stable-CIR Labor.

Alle Fehler erben von StableCIRError, damit die CLI sie auf Exit-Codes
abbilden kann.
"""

from typing import Optional


class StableCIRError(Exception):
    """Basisklasse aller Fehler dieses Pakets"""

    exit_code: int = 1
    kind: str = "error"


class ParameterError(StableCIRError, ValueError):
    """Modell- oder Argumentwerte verletzen eine Invariante"""

    exit_code = 2
    kind = "validation"


class ConfigError(StableCIRError):
    """Konfiguration ist unvollständig, unbekannt oder widersprüchlich"""

    exit_code = 2
    kind = "validation"


class BranchCutError(StableCIRError, ArithmeticError):
    """Basis der äußeren Potenz fällt (numerisch) auf den Punkt 0"""

    exit_code = 3
    kind = "domain"


class QuadratureError(StableCIRError):
    """Adaptive Quadratur hat die Toleranz nicht erreicht"""

    exit_code = 3
    kind = "quadrature"

    def __init__(self, message: str, error_estimate: float = float("nan"),
                 n_panels: int = 0):
        """
        Args:
            message: Fehlerbeschreibung
            error_estimate: Erreichte Fehlerschätzung
            n_panels: Anzahl verwendeter Teilintervalle
        """
        super().__init__(
            f"{message} (Fehlerschätzung={error_estimate:.3e}, Panels={n_panels})"
        )
        self.error_estimate = error_estimate
        self.n_panels = n_panels


class DensityEvaluationError(QuadratureError):
    """Dichteauswertung an einer bestimmten Abszisse fehlgeschlagen"""

    def __init__(self, abscissa: float, cause: Exception):
        """
        Args:
            abscissa: Abszisse, an der die Auswertung scheiterte
            cause: Ursprünglicher Fehler
        """
        estimate = getattr(cause, "error_estimate", float("nan"))
        panels = getattr(cause, "n_panels", 0)
        super().__init__(f"Dichte bei x={abscissa!r} nicht auswertbar: {cause}",
                         estimate, panels)
        self.abscissa = abscissa
        self.cause = cause


class SimulationError(StableCIRError):
    """Pfadsimulation ist mit den Einstellungen nicht durchführbar"""

    exit_code = 1
    kind = "simulation"


class AcceptanceError(StableCIRError):
    """Ein Akzeptanzkriterium wurde verfehlt (Artefakte sind geschrieben)"""

    exit_code = 4
    kind = "acceptance"

    def __init__(self, message: str, detail: Optional[dict] = None):
        super().__init__(message)
        self.detail = detail or {}
