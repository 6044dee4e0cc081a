"""
Dependency Checker für das Stable-CIR Labor.

Läuft vor allen numerischen Imports; Meldungen gehen nach stderr, damit
stdout frei von Installationshinweisen bleibt.
"""

import importlib
import importlib.util
import subprocess
import sys
from typing import Dict, List, Tuple

# Erforderliche Dependencies
REQUIRED_DEPENDENCIES: Dict[str, str] = {
    'numpy': 'numpy>=1.24',
    'scipy': 'scipy>=1.11',
    'rich': 'rich>=13.7.0',
}


def check_dependencies(skip_check: bool = False) -> bool:
    """
    Prüft und installiert fehlende Dependencies.

    Args:
        skip_check: Wenn True, wird die Prüfung übersprungen

    Returns:
        True wenn alle Dependencies verfügbar sind, False sonst
    """
    if skip_check:
        return True

    missing_deps = find_missing_dependencies(REQUIRED_DEPENDENCIES)
    if not missing_deps:
        return True

    _report("Fehlende Pakete gefunden:")
    for module_name, pip_package in missing_deps:
        _report(f"  - {module_name} ({pip_package})")

    if _ask_for_installation():
        return _install_missing_dependencies(missing_deps)

    _report("\nInstallation übersprungen. Bitte manuell installieren:")
    _report(f"  pip install {' '.join(pkg for _, pkg in missing_deps)}")
    return False


def find_missing_dependencies(wanted: Dict[str, str]) -> List[Tuple[str, str]]:
    """
    Findet alle nicht importierbaren Module.

    Args:
        wanted: Modulname -> pip-Paket mit Version

    Returns:
        Liste von Tupeln (module_name, pip_package)
    """
    return [(module_name, pip_package) for module_name, pip_package in wanted.items()
            if importlib.util.find_spec(module_name) is None]


def _report(message: str) -> None:
    print(message, file=sys.stderr)


def _ask_for_installation() -> bool:
    """Fragt nach automatischer Installation (nur mit interaktivem Terminal)"""
    if not sys.stdin.isatty():
        return False
    try:
        response = input("\nSollen die fehlenden Pakete automatisch installiert werden? (j/n): ")
        return response.lower() in ['j', 'ja', 'y', 'yes', '']
    except (KeyboardInterrupt, EOFError):
        _report("\nInstallation abgebrochen.")
        return False


def _install_missing_dependencies(missing_deps: List[Tuple[str, str]]) -> bool:
    """
    Installiert fehlende Dependencies per pip.

    Args:
        missing_deps: Liste fehlender Dependencies

    Returns:
        True wenn alle erfolgreich installiert wurden
    """
    failed_installs = []
    for _, pip_package in missing_deps:
        _report(f"Installiere {pip_package}...")
        try:
            subprocess.check_call(
                [sys.executable, '-m', 'pip', 'install', pip_package],
                stdout=subprocess.DEVNULL,
                stderr=subprocess.STDOUT
            )
        except subprocess.CalledProcessError:
            failed_installs.append(pip_package)

    if failed_installs:
        _report("\nFehler bei der Installation folgender Pakete:")
        for package in failed_installs:
            _report(f"  - {package}")
        return False

    # Cache invalidieren für neue Imports
    importlib.invalidate_caches()
    _report("\nAlle Pakete erfolgreich installiert!")
    return True
