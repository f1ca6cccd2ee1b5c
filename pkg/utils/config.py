# config.py
"""Configuration for power graph spectra"""

import os
import sys


def _env_int(name: str, default: int) -> int:
    """Read a positive integer override from the environment"""
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        print(f"Ignoring {name}={raw!r}: not an integer", file=sys.stderr)
        return default
    if value < 1:
        print(f"Ignoring {name}={raw!r}: must be positive", file=sys.stderr)
        return default
    return value


# Largest group/graph that is ever enumerated element by element
ENUM_CAP = _env_int("ENUM_CAP", 4096)

# Largest Laplacian handed to the exact characteristic polynomial
ORACLE_CAP = _env_int("ORACLE_CAP", 300)

# Above this dimension the oracle switches from Faddeev-LeVerrier to the modular path
FADDEEV_CAP = 16

# Residues stay below 2^25 so int64 dot products of length <= 300 cannot overflow
MODULAR_PRIME_CEILING = 2**25

OUTPUT_FORMATS = ("json", "csv", "latex-table", "plain")
DEFAULT_FORMAT = "json"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
