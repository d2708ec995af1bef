"""Euler convolution on R^n and the convexity decision.

The inverse identity tests probe h = 1_S * inv at 0 and away from 0;
exactness of the arithmetic means a single bad probe would be a real
counterexample, not noise.
"""

import random
from fractions import Fraction
from itertools import product

import pytest

from sheafconv.cf1 import cf1_convolve, cf1_from_sheaf, invertible_shadow
from sheafconv.cfun import (
    ConstructibleFunction,
    cf_inverse_convex,
    default_directions,
    direction_sweep,
    euler_convolve,
    euler_convolve_at,
    indicator,
    indicator_normal_form,
    invertibility_check_cf,
    pushforward_linear,
)
from sheafconv.errors import InputError
from sheafconv.linalg import primitive, vadd
from sheafconv.polytope import Polytope, convex_hull, minkowski_sum
from sheafconv.randgen import rand_box, rand_point, rand_polytope, rand_union_region
from sheafconv.region import CLOSED, RELINT, evaluate_region, is_convex_region, make_region
from sheafconv.sheaf1 import convolve, kc, kco, ko

F = Fraction


def box2(x0, x1, y0, y1):
    return Polytope(((x0, y0), (x1, y0), (x0, y1), (x1, y1)))


def L_shape():
    return make_region(2, [(box2(0, 2, 0, 1), CLOSED, 1), (box2(0, 1, 0, 2), CLOSED, 1)])


# ---------------------------------------------------------------------------
# convolution values


def test_square_against_open_reflected_square():
    f = indicator(box2(0, 1, 0, 1))
    g = indicator(box2(-1, 0, -1, 0), RELINT)
    assert euler_convolve_at(f, g, (F(0), F(0))) == 1
    assert euler_convolve_at(f, g, (F(1, 2), F(1, 2))) == 0


def test_point_convolution_translates():
    f = indicator(box2(0, 1, 0, 1))
    d = indicator(Polytope(((2, 3),)))
    h = euler_convolve(f, d)
    assert h.evaluate((F(5, 2), F(7, 2))) == 1
    assert h.evaluate((F(1, 2), F(1, 2))) == 0


def test_convolve_requires_matching_dimension():
    with pytest.raises(InputError):
        euler_convolve(indicator(Polytope(((0,), (1,)))), indicator(box2(0, 1, 0, 1)))


def test_convolution_is_commutative_and_additive_on_samples():
    rng = random.Random(31)
    for _ in range(6):
        n = rng.choice([2, 3])
        f = ConstructibleFunction(rand_union_region(rng, n, 2, span=2))
        g = indicator(rand_polytope(rng, n, span=2))
        h1, h2 = euler_convolve(f, g), euler_convolve(g, f)
        for _ in range(15):
            t = rand_point(rng, n, span=6)
            assert h1.evaluate(t) == h2.evaluate(t)


def test_minkowski_identity_for_convex_pairs():
    rng = random.Random(32)
    for _ in range(8):
        n = rng.choice([1, 2, 3])
        p, q = rand_polytope(rng, n, span=3), rand_box(rng, n, span=3)
        s = minkowski_sum(p, q)
        h = euler_convolve(indicator(p), indicator(q))
        for _ in range(25):
            t = rand_point(rng, n, span=8)
            assert h.evaluate(t) == (1 if s.contains(t) else 0)


# ---------------------------------------------------------------------------
# the convex inverse


def test_inverse_identity_unit_square():
    sq = box2(0, 1, 0, 1)
    h = euler_convolve(indicator(sq), cf_inverse_convex(sq))
    assert h.evaluate((F(0), F(0))) == 1
    for t in ((F(1), F(1)), (F(-1, 2), F(0)), (F(1, 3), F(1, 7)), (F(5), F(5))):
        assert h.evaluate(t) == 0


def test_inverse_identity_lower_dimensional():
    seg = Polytope(((0, 0, 0), (1, 2, 3)))
    h = euler_convolve(indicator(seg), cf_inverse_convex(seg))
    assert h.evaluate((F(0), F(0), F(0))) == 1
    assert h.evaluate((F(1, 2), F(1), F(3, 2))) == 0  # inside S + (-S)
    assert h.evaluate((F(1), F(1), F(1))) == 0
    pt = Polytope(((3, -2),))
    h2 = euler_convolve(indicator(pt), cf_inverse_convex(pt))
    assert h2.evaluate((F(0), F(0))) == 1 and h2.evaluate((F(1), F(0))) == 0


def test_inverse_sign_in_one_dimension():
    seg = Polytope(((0,), (1,)))
    inv = cf_inverse_convex(seg)
    assert inv.evaluate((F(-1, 2),)) == -1
    assert inv.evaluate((F(0),)) == 0 and inv.evaluate((F(-1),)) == 0


# ---------------------------------------------------------------------------
# pushforward and shadows


def test_pushforward_square():
    cf = pushforward_linear(indicator(box2(0, 1, 0, 1)), (1, 0))
    assert cf.to_json() == {
        "breakpoints": ["0", "1"],
        "point_values": [1, 1],
        "gap_values": [1],
    }
    assert invertible_shadow(cf)


def test_pushforward_L_sees_the_elbow():
    cf = pushforward_linear(ConstructibleFunction(indicator_normal_form(L_shape())), (1, 1))
    assert max(cf.point_values) == 2 or max(cf.gap_values) == 2
    assert not invertible_shadow(cf)


def test_pushforward_point_mass():
    cf = pushforward_linear(indicator(Polytope(((2, 3),))), (1, 2))
    assert cf.to_json() == {"breakpoints": ["8"], "point_values": [1], "gap_values": []}
    assert invertible_shadow(cf)


def test_pushforward_open_square_alternates_sign():
    cf = pushforward_linear(indicator(box2(0, 1, 0, 1), RELINT), (1, 0))
    assert cf.to_json() == {
        "breakpoints": ["0", "1"],
        "point_values": [0, 0],
        "gap_values": [-1],
    }
    assert invertible_shadow(cf)  # matches the open-interval pattern


def test_pushforward_one_dimensional_matches_sheaf_shadow():
    for f, g in ((kc(0, 1), kc(2, 4)), (kc(0, 1), ko(0, 2)), (kco(0, 1), ko(-1, 3))):
        region_f = pushforward_linear(
            ConstructibleFunction(_sheaf_region(f)), (1,)
        )
        assert region_f == cf1_from_sheaf(f)
        assert cf1_convolve(cf1_from_sheaf(f), cf1_from_sheaf(g)) == cf1_from_sheaf(
            convolve(f, g)
        )


def _sheaf_region(f):
    items = []
    for g in f.gens:
        iv = g.interval
        closed = Polytope(((iv.lo,), (iv.hi,)))
        sign = -1 if g.shift % 2 else 1
        w = sign * g.mult
        if iv.closure.name == "CC":
            items.append((closed, CLOSED, w))
        elif iv.closure.name == "OO":
            items.append((closed, RELINT, w))
        else:
            # half-open: closed interval minus one endpoint
            items.append((closed, CLOSED, w))
            gone = iv.lo if iv.closure.name == "OC" else iv.hi
            items.append((Polytope(((gone,),)), CLOSED, -w))
    return make_region(1, items)


def test_shadow_patterns():
    from sheafconv.cf1 import build_cf1

    two_bumps = build_cf1([F(0), F(1), F(2), F(3)],
                          lambda t: 1 if F(0) <= t <= F(1) or F(2) <= t <= F(3) else 0)
    assert not invertible_shadow(two_bumps)
    tall = build_cf1([F(0), F(1)], lambda t: 2 if F(0) <= t <= F(1) else 0)
    assert not invertible_shadow(tall)


# ---------------------------------------------------------------------------
# sweeps and the decision


def test_direction_sweep_square_all_pass():
    rep = direction_sweep(make_region(2, [(box2(0, 1, 0, 1), CLOSED, 1)]), max_coeff=3)
    assert rep["all_pass"] and rep["failing"] == []
    assert all(e["verdict"] == "pass" for e in rep["entries"])


def test_direction_sweep_L_fails_diagonal():
    rep = direction_sweep(L_shape(), max_coeff=2)
    assert not rep["all_pass"]
    assert [1, 1] in rep["failing"]
    entry = next(e for e in rep["entries"] if e["direction"] == [1, 1])
    assert entry["verdict"] == "fail"
    assert 2 in entry["cf1"]["point_values"] or 2 in entry["cf1"]["gap_values"]


def test_direction_sweep_rejects_bad_directions():
    r = make_region(2, [(box2(0, 1, 0, 1), CLOSED, 1)])
    with pytest.raises(InputError):
        direction_sweep(r, directions=[])
    with pytest.raises(InputError):
        direction_sweep(r, directions=[(0, 0)])
    with pytest.raises(InputError):
        direction_sweep(make_region(2, [(box2(0, 1, 0, 1), CLOSED, 2)]))


def test_sweep_failure_implies_nonconvex():
    rng = random.Random(33)
    for _ in range(8):
        r = rand_union_region(rng, 2, max_terms=2, span=3)
        rep = direction_sweep(r, max_coeff=2)
        if not rep["all_pass"]:
            assert not is_convex_region(r)[0]


def test_invertibility_check_convex():
    res = invertibility_check_cf(make_region(2, [(box2(0, 1, 0, 1), CLOSED, 1)]))
    assert res["invertible"] and res["d"] == 2
    inv = res["inverse"]
    assert inv.evaluate((F(-1, 2), F(-1, 2))) == 1
    assert inv.evaluate((F(0), F(0))) == 0
    seg3 = make_region(3, [(Polytope(((0, 0, 0), (1, 2, 3))), CLOSED, 1)])
    assert invertibility_check_cf(seg3)["d"] == 1


def test_invertibility_check_L():
    res = invertibility_check_cf(L_shape())
    assert not res["invertible"]
    assert res["slice_chi"] >= 2 and res["direction"] is not None
    assert evaluate_region(L_shape(), res["witness"]["outside"]) == 0


def test_invertibility_check_one_dimensional_gap():
    r = make_region(1, [(Polytope(((0,), (1,))), CLOSED, 1), (Polytope(((2,), (3,))), CLOSED, 1)])
    res = invertibility_check_cf(r)
    assert not res["invertible"] and res["direction"] == (1,)
    assert evaluate_region(r, res["witness"]["outside"]) == 0


def test_default_directions_are_primitive_and_cover_axes():
    r = L_shape()
    dirs = default_directions(r, 2)
    assert all(d == primitive(d) for d in dirs)
    assert (1, 0) in dirs and (0, 1) in dirs and (1, 1) in dirs
