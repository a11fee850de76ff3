"""Deterministic float formatting for CSV output.

repr() of a Python float is the shortest string that round-trips, which is
stable across platforms, so emitted tables are byte-identical for identical
inputs.  Infinities format as 'inf'/'-inf'.
"""

from __future__ import annotations


def fmt(value: float) -> str:
    return repr(float(value))
