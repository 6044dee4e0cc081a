"""
Stable-CIR Labor - Haupteinstiegspunkt
"""

import sys
from pathlib import Path
from typing import List, Optional

# Füge das Projekt-Verzeichnis zum Python-Path hinzu
sys.path.insert(0, str(Path(__file__).parent))

# WICHTIG: Dependency Check VOR allen numerischen Imports!
from cli import parse_arguments, check_dependencies, apply_args_to_config


def format_failure(kind: str, exit_code: int, reason: str) -> str:
    """
    Eine maschinenlesbare Fehlerzeile für stderr.

    Args:
        kind: Fehlerart (validation, quadrature, acceptance, ...)
        exit_code: Exit-Code des Prozesses
        reason: Fehlermeldung

    Returns:
        Zeile der Form stable-cir: status=<kind> exit=<code> reason="..."
    """
    reason = " ".join(str(reason).split()).replace('"', "'")
    return f'stable-cir: status={kind} exit={exit_code} reason="{reason}"'


def main(argv: Optional[List[str]] = None) -> int:
    """
    Hauptfunktion.

    Args:
        argv: Argumentliste (Standard: sys.argv[1:])

    Returns:
        Exit-Code (0 Erfolg, 1 Fehler, 2 Validierung, 3 Quadratur, 4 Akzeptanz)
    """
    args = parse_arguments(argv)

    if not check_dependencies(args.skip_check):
        print(format_failure("dependency", 1, "missing packages"), file=sys.stderr)
        return 1

    # Erst jetzt die numerischen Imports (nachdem Dependencies geprüft wurden)
    from display import DisplayManager
    from stable_cir import (AcceptanceError, ExperimentRunner, LoggingCoordinator, RunConfig,
                            StableCIRError)

    try:
        config = RunConfig.load_from_file(Path(args.config)) if args.config else RunConfig()
        apply_args_to_config(config, args)

        coordinator = LoggingCoordinator(config)
        coordinator.setup_system_logging()
        display = DisplayManager(config)

        if args.dump_config:
            config.save_to_file(Path(args.dump_config))

        try:
            result = ExperimentRunner(config, coordinator).run()
        except AcceptanceError as e:
            if "result" in e.detail:
                display.show_run_summary(e.detail["result"])
            raise

        display.show_run_summary(result)
        return 0

    except StableCIRError as e:
        print(format_failure(e.kind, e.exit_code, str(e)), file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        print(format_failure("interrupted", 1, "interrupted by user"), file=sys.stderr)
        return 1
    except Exception as e:
        print(format_failure("error", 1, f"{type(e).__name__}: {e}"), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
