"""Exact rational scalars.

All coordinates, endpoints and offsets in this package are
fractions.Fraction values; Fraction already maintains the invariants we
need (lowest terms, positive denominator, value equality).  Floats are
rejected everywhere at construction time so no rounding can sneak in.
The wire format is the compact string "p" or "p/q".
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

Rat = Fraction

_RAT_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def rat(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to Fraction; reject floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise InputError(f"not an exact rational: {value!r} ({type(value).__name__})")


def parse_rat(text: str) -> Fraction:
    if not _RAT_RE.match(text):
        raise InputError(f"malformed rational {text!r}; expected 'p' or 'p/q'")
    return Fraction(text)


def fmt_rat(value: Fraction) -> str:
    # str(Fraction) is already "p" or "p/q" in lowest terms
    return str(value)
