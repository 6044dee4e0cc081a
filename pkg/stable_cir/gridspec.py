"""
Parser für die kompakten Gitterangaben der Kommandozeile.

Formate:
    "0:20:512"       lineares Gitter start:stop:anzahl (inklusive Endpunkte)
    "2^20:2^60:11"   geometrisches Gitter, Terme als Zahl oder basis^exponent
    "0.5,1,2"        Liste reeller Zahlen
    "10,10"          Paar (y, x)
    "pi/2", "3pi/4"  Winkel mit optionalem Vielfachen von pi
"""

import math
import re
from typing import List, Tuple

import numpy as np

_ANGLE_PATTERN = re.compile(
    r"^\s*(?P<sign>[-+]?)\s*(?P<num>\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?\s*$"
)


def _parse_term(raw: str) -> float:
    """Zahl oder Potenz basis^exponent"""
    text = raw.strip()
    if "^" in text:
        base, exponent = text.split("^", 1)
        return float(base) ** float(exponent)
    return float(text)


def parse_grid(spec: str) -> np.ndarray:
    """
    Parst ein lineares Gitter 'start:stop:anzahl'.

    Returns:
        Aufsteigendes Array mit anzahl Punkten
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:count, got {spec!r}")
    start, stop = _parse_term(parts[0]), _parse_term(parts[1])
    count = int(parts[2])
    if count < 1:
        raise ValueError("grid count must be positive")
    if count > 1 and not stop > start:
        raise ValueError("grid must be increasing")
    if start < 0:
        raise ValueError("grid must be nonnegative")
    return np.linspace(start, stop, count)


def parse_geometric_grid(spec: str) -> np.ndarray:
    """
    Parst ein geometrisches Gitter 'start:stop:anzahl' mit start > 0.

    Returns:
        Aufsteigendes Array mit anzahl Punkten
    """
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:count, got {spec!r}")
    start, stop = _parse_term(parts[0]), _parse_term(parts[1])
    count = int(parts[2])
    if start <= 0:
        raise ValueError("geometric grid must start above 0")
    if count < 2 or not stop > start:
        raise ValueError("geometric grid needs at least two increasing points")
    return np.geomspace(start, stop, count)


def parse_float_list(spec: str) -> List[float]:
    """Kommagetrennte Liste endlicher Zahlen"""
    values = [_parse_term(part) for part in spec.split(",") if part.strip()]
    if not values:
        raise ValueError("empty list")
    if not all(math.isfinite(v) for v in values):
        raise ValueError("list entries must be finite")
    return values


def parse_pair(spec: str) -> Tuple[float, float]:
    """Startpunkt 'y,x'"""
    values = parse_float_list(spec)
    if len(values) != 2:
        raise ValueError(f"expected y,x pair, got {spec!r}")
    if values[0] < 0:
        raise ValueError("initial y must be nonnegative")
    return values[0], values[1]


def parse_angle(spec: str) -> float:
    """
    Parst einen Winkel in Radiant, wahlweise als Vielfaches von pi.

    Returns:
        Winkel als float
    """
    match = _ANGLE_PATTERN.match(spec.lower())
    if match is None:
        return float(spec)
    numerator = float(match.group("num")) if match.group("num") else 1.0
    denominator = float(match.group("den")) if match.group("den") else 1.0
    sign = -1.0 if match.group("sign") == "-" else 1.0
    return sign * numerator * math.pi / denominator
