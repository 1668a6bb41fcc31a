"""SI conversion of unit-suffixed quantities such as "1.5 mohm" or "2 uH"."""

import re

UNIT_FACTORS: dict[str, float] = {
    "ohm": 1.0,
    "mohm": 1e-3,
    "h": 1.0,
    "mh": 1e-3,
    "uh": 1e-6,
    "f": 1.0,
    "mf": 1e-3,
    "uf": 1e-6,
    "a": 1.0,
    "v": 1.0,
    "s": 1.0,
}

_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z]+)?\s*$")


def parse_quantity(value: float | int | str) -> float:
    """
    Convert a number or a "<number> <unit>" string to SI.

    Unit names are case-insensitive. Bare numbers are taken as SI already.

    Raises:
        ValueError: If the string is malformed or the unit unknown
    """
    if isinstance(value, bool):
        raise ValueError("expected a number or a quantity string, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ValueError(f"expected a number or a quantity string, got {type(value).__name__}")

    match = _QUANTITY.match(value)
    if match is None:
        raise ValueError(f"malformed quantity '{value}'")
    number, unit = match.groups()
    if unit is None:
        return float(number)
    factor = UNIT_FACTORS.get(unit.lower())
    if factor is None:
        raise ValueError(f"unknown unit '{unit}' in '{value}' (known: {', '.join(sorted(UNIT_FACTORS))})")
    return float(number) * factor
