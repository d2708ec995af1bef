"""Brute-force oracles versus the closure-pair table.

The stalk oracle classifies I cap (t-J) from endpoint arithmetic; the
sections oracle counts components of the excluded-face set of a
partially closed rectangle.  Neither consults the table, which is what
makes validate_table meaningful.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from sheafconv.errors import InputError
from sheafconv.oracle import (
    conv_sections_oracle,
    conv_stalk_oracle,
    sheaf_slab_sections,
    validate_table,
)
from sheafconv.randgen import rand_generator
from sheafconv.sheaf1 import (
    Closure,
    Generator,
    Interval,
    Sheaf1,
    convolve_generators,
    dirac,
    euler_c,
    kc,
    kco,
    ko,
    koc,
    normalize,
    stalk,
)


def gen(f: Sheaf1) -> Generator:
    assert len(f.gens) == 1
    return f.gens[0]


# ---------------------------------------------------------------------------
# stalk oracle


def test_stalk_oracle_closed_meets_open():
    # [0,1] cap (2 - ]0,3[) = [0,1] cap ]-1,2[ = [0,1], closed
    assert conv_stalk_oracle(gen(kc(0, 1)), gen(ko(0, 3)), Fraction(2)) == {0: 1}


def test_stalk_oracle_half_open_everywhere():
    g, h = gen(kco(0, 1)), gen(koc(0, 1))
    for t in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5)):
        assert conv_stalk_oracle(g, h, t) == {}


def test_stalk_oracle_open_intersection():
    # [0,1] cap (0 - ]-1,0[) = [0,1] cap ]0,1[ = ]0,1[, open
    assert conv_stalk_oracle(gen(kc(0, 1)), gen(ko(-1, 0)), Fraction(0)) == {1: 1}


def test_stalk_oracle_shift_and_mult():
    g = gen(kc(0, 1, shift=2, mult=3))
    h = gen(ko(-1, 0, shift=-1, mult=2))
    # degree 1 shifted by -(2 + -1) = -1 -> degree 0, mult 6
    assert conv_stalk_oracle(g, h, Fraction(0)) == {0: 6}


def test_stalk_oracle_reflects_closure_flags():
    # convolving with a skyscraper recovers membership of t in J, so a
    # wrong flag swap in t-J would show up at the endpoints
    d = gen(dirac(0))
    for mk in (kc, ko, kco, koc):
        h = gen(mk(0, 1))
        for t in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
            want = {0: 1} if h.interval.contains(t) else {}
            assert conv_stalk_oracle(d, h, t) == want, (mk.__name__, t)


# ---------------------------------------------------------------------------
# sections oracle


def test_sections_open_times_open_is_a_circle():
    # excluded faces form the full boundary circle -> H^2
    assert conv_sections_oracle(gen(ko(0, 1)), gen(ko(0, 2)), (Fraction(-1), Fraction(4))) == {2: 1}


def test_sections_closed_times_closed_is_connected():
    assert conv_sections_oracle(gen(kc(0, 1)), gen(kc(0, 2)), (Fraction(-1), Fraction(4))) == {0: 1}


def test_sections_semi_open_pair_vanishes():
    # excluded right edge and top edge share the corner (1,3): B is one
    # connected arc, so every cohomology degree dies
    assert conv_sections_oracle(gen(kco(0, 1)), gen(kco(0, 3)), (Fraction(-1), Fraction(5))) == {}
    # consistency with the table result k_{[0,1[} + k_{[3,4[}[-1], whose
    # slab sections vanish term by term
    f = normalize(list(convolve_generators(gen(kco(0, 1)), gen(kco(0, 3)))))
    assert sheaf_slab_sections(f, Fraction(-1), Fraction(5)) == {}


def test_sections_slab_cutting_support():
    g, h = gen(kc(0, 1)), gen(kc(0, 1))
    # slab ]-1, 1[ cuts the rectangle; boundary cut is open so the
    # closed corner at s=0 still contributes H^0
    assert conv_sections_oracle(g, h, (Fraction(-1), Fraction(1))) == {0: 1}
    # slab through the middle of an open result
    go = gen(ko(0, 1))
    assert conv_sections_oracle(go, go, (Fraction(1, 2), Fraction(3, 2))) == {1: 1}


def test_sheaf_slab_sections_counts_interior_open_ends():
    f = ko(0, 1, shift=0)
    assert sheaf_slab_sections(f, Fraction(-1), Fraction(2)) == {1: 1}
    assert sheaf_slab_sections(f, Fraction(0), Fraction(1)) == {0: 1}  # both cuts at the boundary
    assert sheaf_slab_sections(kco(0, 1), Fraction(-1), Fraction(2)) == {}
    assert sheaf_slab_sections(kc(0, 1, shift=2, mult=5), Fraction(-1), Fraction(2)) == {-2: 5}


# ---------------------------------------------------------------------------
# the driver


def test_validate_table_clean():
    report = validate_table(trials=300, seed=7)
    assert report["count"] == 0
    assert report["discrepancies"] == []
    assert report["trials"] == 300 and report["seed"] == 7


def test_validate_table_rejects_zero_trials():
    with pytest.raises(InputError):
        validate_table(trials=0)


def test_validate_table_catches_a_corrupted_entry():
    # sabotage just the closed*closed cell of the table
    def corrupted(g: Generator, h: Generator) -> Sheaf1:
        out = normalize(list(convolve_generators(g, h)))
        if (g.interval.closure, h.interval.closure) == (Closure.CC, Closure.CC):
            out = normalize(
                [Generator(Interval(x.interval.lo, x.interval.hi + 1, x.interval.closure),
                           x.shift, x.mult) for x in out.gens]
            )
        return out

    report = validate_table(trials=120, seed=3, conv_fn=corrupted)
    assert report["count"] > 0
    assert all(d["pair"] == "cc*cc" for d in report["discrepancies"])
    assert {d["kind"] for d in report["discrepancies"]} <= {"stalk", "sections"}


def euler_from_stalk_samples(g: Generator, h: Generator) -> int:
    """Integrate the oracle's pointwise chi over a cell refinement."""
    pts = sorted({
        g.interval.lo + h.interval.lo, g.interval.lo + h.interval.hi,
        g.interval.hi + h.interval.lo, g.interval.hi + h.interval.hi,
    })
    chi = lambda dims: sum((-1 if d % 2 else 1) * m for d, m in dims.items())
    total = 0
    for p in pts:
        total += chi(conv_stalk_oracle(g, h, p))
    for a, b in zip(pts, pts[1:]):
        if a < b:
            total -= chi(conv_stalk_oracle(g, h, (a + b) / 2))
    return total


def test_stalk_oracle_integrates_to_euler_product():
    rng = random.Random(21)
    for _ in range(150):
        g, h = rand_generator(rng), rand_generator(rng)
        lhs = euler_from_stalk_samples(g, h)
        rhs = euler_c(Sheaf1((g,))) * euler_c(Sheaf1((h,)))
        assert lhs == rhs, (g, h)
