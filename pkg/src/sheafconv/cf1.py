"""Compactly supported, piecewise-constant integer functions on the line.

Canonical form: strictly increasing breakpoints b_1 < ... < b_k, the
value at each breakpoint, and the value on each open gap between
consecutive breakpoints.  Outside [b_1, b_k] the value is zero, and no
breakpoint is removable (a removable one would have point value equal to
both adjacent gap values).  These functions are the Euler-characteristic
shadows of interval sheaves and the 1-D targets of linear pushforwards;
they carry an exact Euler convolution.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import InvariantViolation
from .rational import fmt_rat, rat
from . import sheaf1


@dataclass(frozen=True)
class Cf1:
    breaks: tuple[Fraction, ...]
    point_values: tuple[int, ...]
    gap_values: tuple[int, ...]  # len(breaks) - 1 interior gaps

    def __post_init__(self):
        k = len(self.breaks)
        if len(self.point_values) != k or len(self.gap_values) != max(k - 1, 0):
            raise InvariantViolation("Cf1 field lengths are inconsistent")
        if any(self.breaks[i] >= self.breaks[i + 1] for i in range(k - 1)):
            raise InvariantViolation("Cf1 breakpoints must be strictly increasing")

    @property
    def is_zero(self) -> bool:
        return not self.breaks

    def __call__(self, t) -> int:
        t = rat(t)
        if not self.breaks or t < self.breaks[0] or t > self.breaks[-1]:
            return 0
        i = bisect.bisect_left(self.breaks, t)
        if i < len(self.breaks) and self.breaks[i] == t:
            return self.point_values[i]
        return self.gap_values[i - 1]

    def to_json(self) -> dict:
        return {
            "breakpoints": [fmt_rat(b) for b in self.breaks],
            "point_values": list(self.point_values),
            "gap_values": list(self.gap_values),
        }

    @staticmethod
    def from_json(obj: dict) -> "Cf1":
        return build_cf1(
            [rat(b) for b in obj["breakpoints"]],
            _table_lookup(obj),
        )


def _table_lookup(obj: dict) -> Callable[[Fraction], int]:
    breaks = [rat(b) for b in obj["breakpoints"]]
    pv = [int(v) for v in obj["point_values"]]
    gv = [int(v) for v in obj["gap_values"]]
    raw = Cf1(tuple(breaks), tuple(pv), tuple(gv))
    return raw.__call__


def build_cf1(candidates: Iterable[Fraction], value_at: Callable[[Fraction], int]) -> Cf1:
    """Canonical Cf1 from a covering candidate breakpoint set.

    The candidate set must contain every genuine breakpoint; extras are
    stripped.  value_at is evaluated at candidates and gap midpoints.
    """
    pts = sorted(set(rat(c) for c in candidates))
    if not pts:
        return Cf1((), (), ())
    pv = [value_at(p) for p in pts]
    gv = [value_at((pts[i] + pts[i + 1]) / 2) for i in range(len(pts) - 1)]
    keep = []
    for i, p in enumerate(pts):
        left = gv[i - 1] if i > 0 else 0
        right = gv[i] if i < len(gv) else 0
        if not (pv[i] == left == right):
            keep.append(i)
    if not keep:
        return Cf1((), (), ())
    kept = [pts[i] for i in keep]
    kept_pv = [pv[i] for i in keep]
    # gap values between kept breakpoints are constant on the merged gaps
    kept_gv = [value_at((kept[i] + kept[i + 1]) / 2) for i in range(len(kept) - 1)]
    return Cf1(tuple(kept), tuple(kept_pv), tuple(kept_gv))


def cf1_zero() -> Cf1:
    return Cf1((), (), ())


def cf1_add(f: Cf1, g: Cf1) -> Cf1:
    return build_cf1(f.breaks + g.breaks, lambda t: f(t) + g(t))


def cf1_scale(f: Cf1, c: int) -> Cf1:
    if c == 0:
        return cf1_zero()
    return Cf1(f.breaks, tuple(c * v for v in f.point_values),
               tuple(c * v for v in f.gap_values))


def _atoms(f: Cf1) -> tuple[list[tuple[Fraction, int]], list[tuple[Fraction, Fraction, int]]]:
    """Exact decomposition into point masses and open-gap plateaus."""
    points = [(b, v) for b, v in zip(f.breaks, f.point_values) if v]
    gaps = [
        (f.breaks[i], f.breaks[i + 1], v)
        for i, v in enumerate(f.gap_values)
        if v
    ]
    return points, gaps


def cf1_convolve(f: Cf1, g: Cf1) -> Cf1:
    """Euler convolution (f * g)(t) = integral of f(x) g(t-x) d(chi).

    On atoms: point*point is a point mass, point*gap shifts the gap, and
    gap*gap contributes -1 times the product on the open sum interval
    (an open interval has compactly supported Euler characteristic -1).
    """
    fp, fg = _atoms(f)
    gp, gg = _atoms(g)
    points: dict[Fraction, int] = {}
    opens: list[tuple[Fraction, Fraction, int]] = []
    for x, cv in fp:
        for y, dv in gp:
            points[x + y] = points.get(x + y, 0) + cv * dv
        for u, v, dv in gg:
            opens.append((x + u, x + v, cv * dv))
    for u, v, cv in fg:
        for y, dv in gp:
            opens.append((u + y, v + y, cv * dv))
        for u2, v2, dv in gg:
            opens.append((u + u2, v + v2, -cv * dv))

    def value(t: Fraction) -> int:
        total = points.get(t, 0)
        for u, v, c in opens:
            if u < t < v:
                total += c
        return total

    candidates = set(points)
    for u, v, _ in opens:
        candidates.add(u)
        candidates.add(v)
    return build_cf1(candidates, value)


def cf1_one() -> Cf1:
    """Euler unit: the point mass at 0."""
    return Cf1((rat(0),), (1,), ())


def cf1_reflect(f: Cf1) -> Cf1:
    rb = tuple(-b for b in reversed(f.breaks))
    return Cf1(rb, tuple(reversed(f.point_values)), tuple(reversed(f.gap_values)))


def cf1_from_sheaf(f: sheaf1.Sheaf1) -> Cf1:
    """Pointwise Euler characteristic of the stalks."""
    candidates = []
    for g in f:
        candidates.extend((g.interval.lo, g.interval.hi))

    def value(t: Fraction) -> int:
        return sum((-1 if deg % 2 else 1) * dim for deg, dim in sheaf1.stalk(f, t).items())

    return build_cf1(candidates, value)


def invertible_shadow(f: Cf1) -> bool:
    """Whether f is the Euler shadow of an invertible one-dimensional
    object: +1 on a closed interval or point, or -1 on an open interval."""
    if len(f.breaks) == 1:
        return f.point_values == (1,)
    if len(f.breaks) == 2:
        pv, gv = f.point_values, f.gap_values
        return (pv, gv) in (((1, 1), (1,)), ((0, 0), (-1,)))
    return False
