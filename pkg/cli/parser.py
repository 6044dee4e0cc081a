"""
ArgumentParser für das Stable-CIR Labor.
"""

import argparse
from typing import Any, Dict, List, Optional

from .arguments import ARGUMENT_GROUPS


def create_parser() -> argparse.ArgumentParser:
    """
    Erstellt und konfiguriert den ArgumentParser.

    Returns:
        Konfigurierter ArgumentParser
    """
    parser = argparse.ArgumentParser(
        prog="stable-cir",
        description="Stable-CIR Labor - Transformationen, Dichten, Simulation und "
                    "Ergodizitätsdiagnosen des alpha-Wurzel-Prozesses",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
        epilog=_get_epilog_text()
    )

    _add_arguments_from_config(parser, ARGUMENT_GROUPS)

    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parst die Kommandozeilen-Argumente.

    Args:
        argv: Argumentliste (Standard: sys.argv[1:])

    Returns:
        Namespace mit geparsten Argumenten
    """
    parser = create_parser()
    return parser.parse_args(argv)


def _get_epilog_text() -> str:
    """
    Gibt den Epilog-Text für den Parser zurück.

    Returns:
        Epilog-Text mit Beispielen
    """
    return """
Beispiele:
  python main.py density --t 1 --y0 1 --a 1 --b 1 --alpha 1.5 --grid 0:20:512
  python main.py laplace --lambdas 0.5,1,2
  python main.py simulate --paths 1000 --dt 1e-3 --horizon 1
  python main.py tv-decay --init-a 0,0 --init-b 10,10 --ts 0.5,1,2,4,8 --paths 100000 --seed 42
  python main.py bounds-check --alpha 1.5 --angle pi/2 --t 1
  python main.py lyapunov-check --y0 10 --x0 10 --t 2

Exit-Codes:
  0 Erfolg, 1 Simulations-/unerwarteter Fehler, 2 ungültige Konfiguration,
  3 Quadraturfehler, 4 Akzeptanzprüfung nicht bestanden
"""


def _add_arguments_from_config(parser: argparse.ArgumentParser,
                               groups: Dict[str, Dict[str, Any]]) -> None:
    """
    Fügt Argumente basierend auf Dictionary-Konfiguration hinzu.

    Args:
        parser: ArgumentParser-Instanz
        groups: Dictionary mit Argument-Gruppen-Definitionen
    """
    for group_config in groups.values():
        group = parser.add_argument_group(group_config['description'])

        for arg_config in group_config['arguments']:
            # Kopiere Dictionary um Original nicht zu verändern
            arg = arg_config.copy()

            # Entferne custom fields
            arg_name = arg.pop('name')
            arg.pop('config_path', None)
            arg.pop('config_value', None)

            group.add_argument(arg_name, **arg)
