"""Weighted regions: integer combinations of closed or relatively open
polytope terms in a fixed ambient dimension.

The convexity decision compares exact volumes: the support of an
indicator region equals its convex hull iff the hull volume matches the
inclusion-exclusion volume of the union, both measured through the
hull's coordinate chart.  A nonempty difference is open in the hull and
therefore has positive volume, so the comparison is a real decision
procedure, not a heuristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import InputError, InvariantViolation
from .linalg import vadd, vdot, vscale, vsub
from .polytope import (
    Polytope,
    chart_volume,
    convex_hull,
    intersect_polytopes,
    open_indicator_expansion,
    slice_polytope,
)
from .rational import fmt_rat, rat

CLOSED = "closed"
RELINT = "relint"


@dataclass(frozen=True)
class Term:
    poly: Polytope
    mode: str
    weight: int

    def __post_init__(self):
        if self.mode not in (CLOSED, RELINT):
            raise InputError(f"unknown face-selection mode {self.mode!r}")
        if not isinstance(self.weight, int) or isinstance(self.weight, bool):
            raise InputError("term weight must be an integer")
        if self.weight == 0:
            raise InputError("term weight must be nonzero")

    @property
    def sort_key(self):
        return (self.poly.verts, self.mode)


@dataclass(frozen=True)
class Region:
    dim: int
    terms: tuple[Term, ...]

    def __post_init__(self):
        if not 1 <= self.dim <= 3:
            raise InputError(f"ambient dimension {self.dim} out of range 1..3")
        if any(t.poly.n != self.dim for t in self.terms):
            raise InputError("term dimension mismatch")
        keys = [t.sort_key for t in self.terms]
        if keys != sorted(keys) or len(set(keys)) != len(keys):
            raise InvariantViolation("region terms not in canonical form")


def make_region(dim: int, items) -> Region:
    """Canonical region from (polytope, mode, weight) triples.

    Equal (polytope, mode) entries merge; zero weights drop out.
    """
    acc: dict = {}
    polys: dict = {}
    for poly, mode, weight in items:
        key = (poly.verts, mode)
        acc[key] = acc.get(key, 0) + weight
        polys[key] = poly
    terms = [
        Term(polys[k], k[1], w)
        for k, w in acc.items()
        if w != 0
    ]
    terms.sort(key=lambda t: t.sort_key)
    return Region(dim, tuple(terms))


def region_to_json(r: Region) -> dict:
    return {
        "dimension": r.dim,
        "terms": [
            {
                "vertices": [[fmt_rat(c) for c in v] for v in t.poly.verts],
                "mode": t.mode,
                "weight": t.weight,
            }
            for t in r.terms
        ],
    }


def region_from_json(data) -> Region:
    if not isinstance(data, dict):
        raise InputError("region document must be a JSON object")
    try:
        dim = data["dimension"]
        raw_terms = data["terms"]
    except (KeyError, TypeError) as exc:
        raise InputError(f"region document missing field: {exc}") from None
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise InputError("dimension must be an integer")
    if not isinstance(raw_terms, list):
        raise InputError("terms must be a list")
    items = []
    for entry in raw_terms:
        try:
            verts = entry["vertices"]
            mode = entry["mode"]
            weight = entry["weight"]
        except (KeyError, TypeError) as exc:
            raise InputError(f"region term missing field: {exc}") from None
        if not verts:
            raise InputError("region term needs at least one vertex")
        pts = [tuple(rat(c) for c in v) for v in verts]
        if any(len(p) != dim for p in pts):
            raise InputError("vertex length disagrees with dimension")
        if not isinstance(weight, int) or isinstance(weight, bool):
            raise InputError("term weight must be an integer")
        items.append((convex_hull(pts), mode, weight))
    return make_region(dim, items)


# ---------------------------------------------------------------------------
# evaluation and chi


def evaluate_region(r: Region, x) -> int:
    x = tuple(rat(c) for c in x)
    if len(x) != r.dim:
        raise InputError("point dimension mismatch")
    return sum(
        t.weight for t in r.terms if t.poly.contains(x, strict=t.mode == RELINT)
    )


def euler_char_c(r: Region) -> int:
    """chi_c, additive over terms: closed gives 1, relint gives (-1)^d."""
    total = 0
    for t in r.terms:
        piece = 1 if t.mode == CLOSED else (-1 if t.poly.adim % 2 else 1)
        total += t.weight * piece
    return total


def closed_expansion(r: Region) -> list[tuple[Polytope, int]]:
    """Rewrite every term over closed polytopes (relint via its face sum)."""
    acc: dict = {}
    polys: dict = {}
    for t in r.terms:
        if t.mode == CLOSED:
            pieces = [(t.poly, 1)]
        else:
            pieces = open_indicator_expansion(t.poly)
        for poly, sign in pieces:
            acc[poly.verts] = acc.get(poly.verts, 0) + sign * t.weight
            polys[poly.verts] = poly
    return [(polys[k], w) for k, w in sorted(acc.items()) if w != 0]


# ---------------------------------------------------------------------------
# slicing


def slice_region(r: Region, xi, t) -> Region:
    """Intersection with the hyperplane <xi, x> = t, written in the chart
    that drops the first coordinate where xi is nonzero."""
    xi = tuple(rat(c) for c in xi)
    if len(xi) != r.dim:
        raise InputError("covector dimension mismatch")
    if all(c == 0 for c in xi):
        raise InputError("slicing direction must be nonzero")
    if r.dim == 1:
        raise InputError("slicing needs ambient dimension at least 2")
    t = rat(t)
    drop = next(i for i, c in enumerate(xi) if c != 0)
    keep = [i for i in range(r.dim) if i != drop]

    def project(poly: Polytope) -> Polytope:
        return Polytope(tuple(tuple(v[i] for i in keep) for v in poly.verts))

    items = []
    for term in r.terms:
        vals = [vdot(xi, v) for v in term.poly.verts]
        lo, hi = min(vals), max(vals)
        if term.mode == CLOSED:
            sliced = slice_polytope(term.poly, xi, t)
            if sliced is not None:
                items.append((project(sliced), CLOSED, term.weight))
        else:
            # relint meets the hyperplane iff it crosses or lies inside it
            if lo == hi == t:
                items.append((project(term.poly), RELINT, term.weight))
            elif lo < t < hi:
                sliced = slice_polytope(term.poly, xi, t)
                items.append((project(sliced), RELINT, term.weight))
    return make_region(r.dim - 1, items)


# ---------------------------------------------------------------------------
# convexity decision


def indicator_polys(r: Region) -> list[Polytope]:
    if not r.terms:
        raise InputError("empty region carries no indicator support")
    bad = [t for t in r.terms if t.mode != CLOSED or t.weight != 1]
    if bad:
        raise InputError("indicator region needs closed terms of weight 1")
    return [t.poly for t in r.terms]


def _union_volume(polys, chart, dim) -> Fraction:
    """Inclusion-exclusion volume of a union, measured in the given chart."""
    total = Fraction(0)
    live: list[tuple[tuple[int, ...], Polytope]] = []
    for i, p in enumerate(polys):
        new_live = [((i,), p)]
        for idxs, q in live:
            cap = intersect_polytopes(q, p)
            if cap is not None:
                new_live.append((idxs + (i,), cap))
        live.extend(new_live)
    for idxs, q in live:
        vol = chart_volume(q, chart, dim)
        total += vol if len(idxs) % 2 else -vol
    return total


def _segment_exit(polys, x, y):
    """A point of the open segment ]x, y[ outside every polytope, or None."""
    d = vsub(y, x)
    cuts = {Fraction(0), Fraction(1)}
    for p in polys:
        for w, c in tuple(p.equalities) + tuple(p.inequalities):
            den = vdot(w, d)
            if den == 0:
                continue
            s = (c - vdot(w, x)) / den
            if 0 < s < 1:
                cuts.add(s)
    grid = sorted(cuts)
    for a, b in zip(grid, grid[1:]):
        mid = vadd(x, vscale(d, (a + b) / 2))
        if not any(p.contains(mid) for p in polys):
            return mid
    return None


def _barycenter(poly: Polytope):
    k = len(poly.verts)
    acc = poly.verts[0]
    for v in poly.verts[1:]:
        acc = vadd(acc, v)
    return vscale(acc, Fraction(1, k))


def is_convex_region(r: Region):
    """Decide whether the support of an indicator region is convex.

    Returns (True, None) or (False, witness) where the witness carries
    two support points whose open segment leaves the support, plus the
    exit point itself.  The decision is the exact volume comparison; the
    witness search scans term vertices first and face barycenters after
    (vertex pairs alone cannot certify shapes like a triangle boundary).
    """
    polys = indicator_polys(r)
    hull = convex_hull([v for p in polys for v in p.verts])
    if hull.adim == 0:
        return True, None
    chart = hull.chart
    vol_union = _union_volume(polys, chart, hull.adim)
    vol_hull = chart_volume(hull, chart, hull.adim)
    if vol_union == vol_hull:
        return True, None
    tiers = [sorted({v for p in polys for v in p.verts})]
    tiers.append(sorted({_barycenter(f) for p in polys for f in p.faces}))
    seen: list = []
    for tier in tiers:
        fresh = [pt for pt in tier if pt not in seen]
        pool = seen + fresh
        for x, y in combinations(pool, 2):
            if x in seen and y in seen:
                continue
            z = _segment_exit(polys, x, y)
            if z is not None:
                return False, {"x": x, "y": y, "outside": z}
        seen = pool
    raise InvariantViolation("volume defect found but no segment witness")
