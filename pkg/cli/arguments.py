"""
Argument-Definitionen für die Stable-CIR Kommandozeile.

Jedes Argument mit 'config_path' wird nach dem Parsen auf die RunConfig
übertragen; ohne Angabe auf der Kommandozeile bleibt der Wert aus
Konfigurationsdatei bzw. Umgebung erhalten.
"""

from typing import Any, Dict, Optional

# Muss mit stable_cir.config.COMMANDS übereinstimmen (hier ohne numerische Imports)
COMMANDS = ("laplace", "density", "cdf", "simulate", "lyapunov-check", "tv-decay", "bounds-check")

VERSION = "stable-cir 1.0.0"


def _optional_float(raw: str) -> Optional[float]:
    """'auto' oder eine Zahl"""
    return None if raw.strip().lower() == "auto" else float(raw)


ARGUMENT_GROUPS: Dict[str, Dict[str, Any]] = {
    'command': {
        'description': 'Befehl',
        'arguments': [
            {
                'name': 'command',
                'nargs': '?',
                'choices': COMMANDS,
                'help': 'Auszuführendes Experiment (Standard: aus --config bzw. density)',
                'config_path': 'command'
            }
        ]
    },

    'model': {
        'description': 'Modellparameter',
        'arguments': [
            {
                'name': '--a',
                'type': float,
                'help': 'Zufluss a >= 0 (Standard: 1.0)',
                'config_path': 'model.a'
            },
            {
                'name': '--b',
                'type': float,
                'help': 'Mean-Reversion b > 0 (Standard: 1.0)',
                'config_path': 'model.b'
            },
            {
                'name': '--alpha',
                'type': float,
                'help': 'Stabilitätsindex alpha in (1, 2) (Standard: 1.5)',
                'config_path': 'model.alpha'
            },
            {
                'name': '--m',
                'type': float,
                'help': 'Drift-Niveau m des Faktors X (Standard: 0.0)',
                'config_path': 'model.m'
            },
            {
                'name': '--theta',
                'type': float,
                'help': 'Mean-Reversion theta des Faktors X (Standard: 1.0)',
                'config_path': 'model.theta'
            }
        ]
    },

    'experiment': {
        'description': 'Experiment',
        'arguments': [
            {
                'name': '--t',
                'type': float,
                'help': 'Zeitpunkt t (Standard: 1.0)',
                'config_path': 'experiment.t'
            },
            {
                'name': '--y0',
                'type': float,
                'help': 'Startwert von Y (Standard: 1.0)',
                'config_path': 'experiment.y0'
            },
            {
                'name': '--x0',
                'type': float,
                'help': 'Startwert von X (Standard: 0.0)',
                'config_path': 'experiment.x0'
            },
            {
                'name': '--grid',
                'type': str,
                'help': 'Abszissengitter start:stop:anzahl (Standard: 0:20:512)',
                'config_path': 'experiment.grid'
            },
            {
                'name': '--lambdas',
                'type': str,
                'help': 'Kommaliste der lambda-Werte für laplace (Standard: 0.5,1,2)',
                'config_path': 'experiment.lambdas'
            },
            {
                'name': '--ts',
                'type': str,
                'help': 'Kommaliste der Zeitpunkte für tv-decay (Standard: 0.5,1,2,4,8)',
                'config_path': 'experiment.ts'
            },
            {
                'name': '--init-a',
                'type': str,
                'help': 'Startpunkt y,x von Ensemble A (Standard: 0,0)',
                'config_path': 'experiment.init_a'
            },
            {
                'name': '--init-b',
                'type': str,
                'help': 'Startpunkt y,x von Ensemble B (Standard: 10,10)',
                'config_path': 'experiment.init_b'
            },
            {
                'name': '--representation',
                'choices': ['fourier', 'real_axis'],
                'help': 'Dichtedarstellung (Standard: fourier)',
                'config_path': 'experiment.representation'
            },
            {
                'name': '--angle',
                'type': str,
                'help': 'Strahlwinkel für bounds-check, z.B. pi/2 oder 3pi/4 (Standard: pi/2)',
                'config_path': 'experiment.angle'
            },
            {
                'name': '--rho-grid',
                'type': str,
                'help': 'Geometrisches rho-Gitter start:stop:anzahl, z.B. 2^20:2^60:11',
                'config_path': 'experiment.rho_grid'
            },
            {
                'name': '--threshold',
                'type': float,
                'help': 'Schwelle für den empirischen Atom-Schätzer (Standard: 1e-6)',
                'config_path': 'experiment.atom_threshold'
            },
            {
                'name': '--max-bins',
                'type': int,
                'help': 'Maximale Binanzahl je Achse im TV-Histogramm (Standard: 32)',
                'config_path': 'experiment.tv_max_bins'
            },
            {
                'name': '--independent-seeds',
                'action': 'store_true',
                'help': 'Ensemble B mit seed+1 statt gemeinsamer Zufallszahlen',
                'config_path': 'experiment.tv_common_random_numbers',
                'config_value': lambda args: not getattr(args, 'independent_seeds', False)
            }
        ]
    },

    'quadrature': {
        'description': 'Quadratur',
        'arguments': [
            {
                'name': '--abs-tol',
                'type': float,
                'help': 'Absolute Toleranz (Standard: 1e-10)',
                'config_path': 'quad.abs_tol'
            },
            {
                'name': '--rel-tol',
                'type': float,
                'help': 'Relative Toleranz (Standard: 1e-10)',
                'config_path': 'quad.rel_tol'
            },
            {
                'name': '--max-subdivisions',
                'type': int,
                'help': 'Maximale Anzahl Teilintervalle (Standard: 20000)',
                'config_path': 'quad.max_subdivisions'
            },
            {
                'name': '--xi-truncation',
                'type': _optional_float,
                'help': 'Frequenz-Abschneidung oder auto (Standard: auto)',
                'config_path': 'quad.xi_truncation'
            }
        ]
    },

    'simulation': {
        'description': 'Simulation',
        'arguments': [
            {
                'name': '--paths',
                'type': int,
                'help': 'Anzahl Pfade (Standard: 10000)',
                'config_path': 'sim.n_paths'
            },
            {
                'name': '--seed',
                'type': int,
                'help': 'Seed (Standard: STABLE_CIR_SEED oder 42)',
                'config_path': 'sim.seed'
            },
            {
                'name': '--dt',
                'type': float,
                'help': 'Schrittweite (Standard: 1e-3)',
                'config_path': 'sim.dt'
            },
            {
                'name': '--horizon',
                'type': float,
                'help': 'Simulationshorizont (Standard: 1.0)',
                'config_path': 'sim.horizon'
            },
            {
                'name': '--workers',
                'type': int,
                'help': 'Threads für Pfadblöcke; Ergebnis unabhängig davon (Standard: 1)',
                'config_path': 'sim.workers'
            },
            {
                'name': '--record-stride',
                'type': int,
                'help': 'Jeden n-ten Schritt aufzeichnen, 0 = nur Start/Ende (Standard: 100)',
                'config_path': 'sim.record_stride'
            }
        ]
    },

    'output': {
        'description': 'Ausgabe',
        'arguments': [
            {
                'name': '--output',
                'type': str,
                'help': 'Pfad der CSV-Ausgabe (Standard: stable_cir_output.csv)',
                'config_path': 'output.path'
            },
            {
                'name': '--no-summary',
                'action': 'store_true',
                'help': 'Keine <stem>_summary.csv bei simulate',
                'config_path': 'output.write_summary',
                'config_value': lambda args: not getattr(args, 'no_summary', False)
            },
            {
                'name': '--config',
                'type': str,
                'help': 'key=value Konfigurationsdatei laden'
            },
            {
                'name': '--dump-config',
                'type': str,
                'help': 'Aufgelöste Konfiguration in diese Datei schreiben'
            },
            {
                'name': '--no-display',
                'action': 'store_true',
                'help': 'Keine Zusammenfassung im Terminal',
                'config_path': 'display.enabled',
                'config_value': lambda args: not getattr(args, 'no_display', False)
            }
        ]
    },

    'logging': {
        'description': 'Logging',
        'arguments': [
            {
                'name': '--log-level',
                'choices': ['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                'help': 'Log-Level (Standard: WARNING)',
                'config_path': 'logging.log_level'
            },
            {
                'name': '--log-file',
                'type': str,
                'help': 'Zusätzliche Log-Datei',
                'config_path': 'logging.log_file'
            }
        ]
    },

    'system': {
        'description': 'System',
        'arguments': [
            {
                'name': '--skip-check',
                'action': 'store_true',
                'help': 'Überspringe automatische Dependency-Prüfung'
            },
            {
                'name': '--version',
                'action': 'version',
                'version': VERSION
            }
        ]
    }
}
