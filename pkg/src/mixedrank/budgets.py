"""Search caps, overridable through environment variables.

``MIXEDRANK_CYCLE_CAP``, ``MIXEDRANK_ENUM_CAP`` and ``MIXEDRANK_SEARCH_CAP``
are read at call time so a harness run can raise them without code changes.
"""

from __future__ import annotations

import os

DEFAULT_CYCLE_CAP = 10**6
DEFAULT_ENUM_CAP = 10**6
DEFAULT_SEARCH_CAP = 10**5
DEFAULT_EXHAUSTIVE_MAX_N = 6


def _read(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(raw)


def cycle_cap() -> int:
    return _read("MIXEDRANK_CYCLE_CAP", DEFAULT_CYCLE_CAP)


def enum_cap() -> int:
    return _read("MIXEDRANK_ENUM_CAP", DEFAULT_ENUM_CAP)


def search_cap() -> int:
    return _read("MIXEDRANK_SEARCH_CAP", DEFAULT_SEARCH_CAP)


def exhaustive_max_n() -> int:
    """Largest n the exhaustive corpus generator accepts (``MIXEDRANK_EXHAUSTIVE_MAX_N``)."""
    return _read("MIXEDRANK_EXHAUSTIVE_MAX_N", DEFAULT_EXHAUSTIVE_MAX_N)
