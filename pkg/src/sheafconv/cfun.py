"""Constructible functions on R^n (n <= 3) under Euler convolution.

Convolution works through the closed-face presentation: every relint
term is a signed sum of closed faces, and for closed compact convex A, B
the Euler integral of 1_A(x) 1_B(t-x) over x is 1 exactly when t lies in
the Minkowski sum A + B.  So f * g is a signed pile of Minkowski-sum
indicators, cached per argument pair, and pointwise values are plain
membership counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .cf1 import Cf1, build_cf1, cf1_zero, invertible_shadow
from .errors import InputError
from .linalg import cross3, primitive, vdot, vsub
from .polytope import Polytope, convex_hull, minkowski_sum
from .polytope import intersect_polytopes
from .region import (
    CLOSED,
    RELINT,
    Region,
    closed_expansion,
    euler_char_c,
    evaluate_region,
    indicator_polys,
    is_convex_region,
    make_region,
    slice_region,
)
from .rational import rat


@dataclass(frozen=True)
class ConstructibleFunction:
    region: Region

    @property
    def n(self) -> int:
        return self.region.dim

    def evaluate(self, x) -> int:
        return evaluate_region(self.region, x)


def indicator(poly: Polytope, mode: str = CLOSED, weight: int = 1) -> ConstructibleFunction:
    return ConstructibleFunction(make_region(poly.n, [(poly, mode, weight)]))


def evaluate(f: ConstructibleFunction, x) -> int:
    return f.evaluate(x)


@lru_cache(maxsize=256)
def _conv_terms(fr: Region, gr: Region) -> tuple:
    if fr.dim != gr.dim:
        raise InputError("convolution needs a common ambient dimension")
    acc: dict = {}
    polys: dict = {}
    for a, wa in closed_expansion(fr):
        for b, wb in closed_expansion(gr):
            m = minkowski_sum(a, b)
            acc[m.verts] = acc.get(m.verts, 0) + wa * wb
            polys[m.verts] = m
    return tuple((polys[k], w) for k, w in sorted(acc.items()) if w)


def euler_convolve(f: ConstructibleFunction, g: ConstructibleFunction) -> ConstructibleFunction:
    """f * g as a signed sum of closed indicators.

    The term list is a valid presentation, not a canonical facial form;
    supports may overlap.
    """
    terms = _conv_terms(f.region, g.region)
    return ConstructibleFunction(
        make_region(f.n, [(p, CLOSED, w) for p, w in terms])
    )


def euler_convolve_at(f: ConstructibleFunction, g: ConstructibleFunction, t) -> int:
    t = tuple(rat(c) for c in t)
    if len(t) != f.n:
        raise InputError("point dimension mismatch")
    return sum(w for p, w in _conv_terms(f.region, g.region) if p.contains(t))


def cf_inverse_convex(p: Polytope) -> ConstructibleFunction:
    """Euler inverse of the indicator of a compact convex polytope:
    (-1)^d on the relative interior of the reflection, d the affine
    dimension.  For a point this is the reflected point mass."""
    return indicator(p.reflect(), RELINT, -1 if p.adim % 2 else 1)


# ---------------------------------------------------------------------------
# indicators of unions


def indicator_normal_form(r: Region) -> Region:
    """The honest indicator function of the union of an indicator
    region's terms, via inclusion-exclusion (overlaps counted once)."""
    polys = indicator_polys(r)
    live: list[tuple[int, Polytope]] = []
    for p in polys:
        fresh = [(1, p)]
        for size, q in live:
            cap = intersect_polytopes(q, p)
            if cap is not None:
                fresh.append((size + 1, cap))
        live.extend(fresh)
    return make_region(
        r.dim, [(q, CLOSED, -1 if size % 2 == 0 else 1) for size, q in live]
    )


# ---------------------------------------------------------------------------
# projections


def pushforward_linear(f: ConstructibleFunction, xi) -> Cf1:
    """Direct image under x -> <xi, x>: the Euler characteristic of the
    fibre as a one-dimensional constructible function."""
    xi = tuple(rat(c) for c in xi)
    if len(xi) != f.n:
        raise InputError("covector dimension mismatch")
    if all(c == 0 for c in xi):
        raise InputError("projection direction must be nonzero")
    verts = [v for t in f.region.terms for v in t.poly.verts]
    if not verts:
        return cf1_zero()
    breakpoints = sorted({vdot(xi, v) for v in verts})
    if f.n == 1:
        value_at = lambda t: evaluate_region(f.region, (t / xi[0],))
    else:
        value_at = lambda t: euler_char_c(slice_region(f.region, xi, t))
    return build_cf1(breakpoints, value_at)


def default_directions(r: Region, max_coeff: int = 5) -> list[tuple[int, ...]]:
    """Primitive covectors with small coefficients, facet normals, and
    pairwise vertex differences, one representative per line."""
    dirs = set()
    for combo in product(range(-max_coeff, max_coeff + 1), repeat=r.dim):
        if any(combo):
            dirs.add(primitive(combo))
    for term in r.terms:
        for nu, _ in term.poly.inequalities:
            dirs.add(primitive(nu))
    verts = sorted({v for t in r.terms for v in t.poly.verts})
    for u, v in combinations(verts, 2):
        dirs.add(primitive(vsub(v, u)))
    return sorted(dirs)


def direction_sweep(r: Region, directions=None, max_coeff: int = 5) -> dict:
    """Push the union's indicator along each direction and classify the
    shadow.  A failing direction certifies non-invertibility; an
    all-pass sweep certifies nothing (the exact decision is
    is_convex_region)."""
    indicator_polys(r)
    if directions is None:
        dirs = default_directions(r, max_coeff)
    else:
        raw = list(directions)
        if not raw:
            raise InputError("direction sweep needs at least one direction")
        if any(all(rat(c) == 0 for c in d) for d in raw):
            raise InputError("directions must be nonzero")
        dirs = sorted({primitive(tuple(rat(c) for c in d)) for d in raw})
    f = ConstructibleFunction(indicator_normal_form(r))
    entries = []
    failing = []
    for xi in dirs:
        cf = pushforward_linear(f, xi)
        ok = invertible_shadow(cf)
        if not ok:
            failing.append(xi)
        entries.append(
            {
                "direction": list(xi),
                "verdict": "pass" if ok else "fail",
                "cf1": cf.to_json(),
            }
        )
    return {
        "dimension": r.dim,
        "all_pass": not failing,
        "failing": [list(xi) for xi in failing],
        "entries": entries,
    }


# ---------------------------------------------------------------------------
# the invertibility decision


def _perp_directions(d, r: Region):
    """Candidate primitive covectors orthogonal to d."""
    n = r.dim
    if n == 2:
        return [primitive((-d[1], d[0]))]
    axes = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    seeds = list(axes)
    verts = sorted({v for t in r.terms for v in t.poly.verts})
    for u, v in combinations(verts, 2):
        seeds.append(vsub(v, u))
    out = []
    seen = set()
    for s in seeds:
        nu = cross3(d, s)
        if all(c == 0 for c in nu):
            continue
        nu = primitive(nu)
        if nu not in seen:
            seen.add(nu)
            out.append(nu)
    return out


def invertibility_check_cf(r: Region) -> dict:
    """Exact invertibility verdict for the indicator of a union of
    closed polytopes, with the convex hull's Euler inverse on success
    and a witness (point pair, exit point, separating direction with a
    slice of Euler characteristic >= 2) on failure."""
    ok, wit = is_convex_region(r)
    if ok:
        hull = convex_hull([v for t in r.terms for v in t.poly.verts])
        return {
            "invertible": True,
            "d": hull.adim,
            "hull": hull,
            "inverse": cf_inverse_convex(hull),
        }
    out = {"invertible": False, "witness": wit, "direction": None,
           "slice_at": None, "slice_chi": None}
    nf = indicator_normal_form(r)
    if r.dim == 1:
        # hyperplane slices of a line are points; the certificate is the
        # gap itself, already part of the witness
        out["direction"] = (1,)
        return out
    d = vsub(wit["y"], wit["x"])
    for xi in _perp_directions(d, r):
        t = vdot(xi, wit["x"])
        chi = euler_char_c(slice_region(nf, xi, t))
        if chi >= 2:
            out.update(direction=xi, slice_at=t, slice_chi=chi)
            return out
    # fall back to scanning shadow plateaus along the default directions
    f = ConstructibleFunction(nf)
    for xi in default_directions(r, 3):
        cf = pushforward_linear(f, xi)
        for i, v in enumerate(cf.point_values):
            if v >= 2:
                out.update(direction=xi, slice_at=cf.breaks[i], slice_chi=v)
                return out
        for i, v in enumerate(cf.gap_values):
            if v >= 2:
                mid = (cf.breaks[i] + cf.breaks[i + 1]) / 2
                out.update(direction=xi, slice_at=mid, slice_chi=v)
                return out
    return out
