"""Exact convolution calculus for constructible objects on the line,
with an Euler-calculus companion in dimensions up to three."""

from .errors import (
    InputError,
    InvariantViolation,
    NotInvertible,
    ParseError,
    SheafConvError,
)
from .sheaf1 import (
    Closure,
    Generator,
    Interval,
    Sheaf1,
    antipodal,
    convolve,
    dirac,
    direct_sum,
    dual,
    euler_c,
    global_sections_c,
    inverse,
    is_invertible,
    kc,
    kco,
    ko,
    koc,
    normalize,
    rescale,
    shift,
    stalk,
    translate,
    zero,
)

__all__ = [
    "Closure", "Generator", "Interval", "Sheaf1",
    "antipodal", "convolve", "dirac", "direct_sum", "dual",
    "euler_c", "global_sections_c", "inverse", "is_invertible",
    "kc", "kco", "ko", "koc", "normalize", "rescale", "shift",
    "stalk", "translate", "zero",
    "SheafConvError", "InputError", "ParseError", "NotInvertible",
    "InvariantViolation",
]

__version__ = "0.1.0"
