"""Run-time knobs read from the environment."""

import os

DEFAULT_TOL = 1e-10
DEFAULT_ENUM_CAP = 10**7


def tolerance():
    raw = os.environ.get("MOPKIT_TOL")
    return float(raw) if raw else DEFAULT_TOL


def enum_cap():
    raw = os.environ.get("MOPKIT_ENUM_CAP")
    return int(float(raw)) if raw else DEFAULT_ENUM_CAP


def numba_requested():
    return os.environ.get("MOPKIT_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")
