"""
Config Applicator - Wendet CLI-Argumente auf die RunConfig an.
"""

import argparse
import logging
from typing import Any

from .arguments import ARGUMENT_GROUPS

logger = logging.getLogger(__name__)


def apply_args_to_config(config: Any, args: argparse.Namespace) -> None:
    """
    Wendet alle Kommandozeilen-Argumente auf die Konfiguration an.

    Nicht angegebene Argumente (None bzw. False bei store_true) lassen den
    Wert aus Datei oder Umgebung unverändert.

    Args:
        config: RunConfig-Instanz
        args: Geparste Argumente
    """
    for group_config in ARGUMENT_GROUPS.values():
        for arg_config in group_config['arguments']:
            if 'config_path' not in arg_config:
                continue

            arg_name = arg_config['name'].lstrip('-').replace('-', '_')
            arg_value = getattr(args, arg_name, None)

            is_store_true = arg_config.get('action') == 'store_true'
            if arg_value is None or (is_store_true and arg_value is False):
                continue

            if 'config_value' in arg_config:
                value = arg_config['config_value'](args)
            else:
                value = arg_value

            try:
                _set_nested_attr(config, arg_config['config_path'], value)
            except AttributeError as e:
                logger.warning(f"Konnte {arg_config['config_path']} nicht setzen: {e}")


def _set_nested_attr(obj: Any, path: str, value: Any) -> None:
    """
    Setzt ein verschachteltes Attribut über einen Punkt-getrennten Pfad.

    Args:
        obj: Objekt
        path: Punkt-getrennter Pfad (z.B. "model.alpha")
        value: Zu setzender Wert

    Raises:
        AttributeError: wenn ein Teil des Pfads nicht existiert
    """
    attrs = path.split('.')
    for attr in attrs[:-1]:
        obj = getattr(obj, attr)
    if not hasattr(obj, attrs[-1]):
        raise AttributeError(f"{type(obj).__name__} hat kein Attribut {attrs[-1]!r}")
    setattr(obj, attrs[-1], value)
