from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdcac.covering import (CoveringInterval, compute_cover, covers_reals, interval_inside, sample_outside,
                            simplest_between)
from cdcac.realroots import RealAlgebraic, compare
from cdcac.solver import CoveringSolver, check_cover_order
from systems import XY, planar_three


def R(q):
    return None if q is None else RealAlgebraic(Fraction(q))


def I(lo, hi, tag="c"):
    return CoveringInterval(R(lo), R(hi), origins={tag})


def bounds(cover):
    return [(None if J.lower is None else J.lower.value, None if J.upper is None else J.upper.value) for J in cover]


def test_covers_reals_examples():
    assert covers_reals([I(None, "1/2"), I(-1, None)])
    assert not covers_reals([I(None, 0), I(0, None)])
    assert covers_reals([I(None, 0), I(0, 0), I(0, None)])
    assert not covers_reals([])


def test_sample_outside_examples():
    assert sample_outside([]).value == 0
    assert sample_outside([I(-2, 3)]).value == -3
    assert sample_outside([I(None, 6), I(10, None)]).value == 7
    assert sample_outside([I(None, 1), I(1, None)]).value == 1
    assert sample_outside([I(None, "1/2"), I(-1, None)]) is None
    assert sample_outside([I(None, "1/2"), I("2/3", None)]).value == Fraction(1, 2)
    gap = [I(None, "1/2"), I("1/2", "1/2"), I("2/3", "2/3"), I("2/3", None)]
    assert sample_outside(gap).value == Fraction(3, 5)


def test_simplest_between_algebraic():
    sqrt2 = RealAlgebraic.from_root([-2, 0, 1], (Fraction(1), Fraction(2)))
    assert simplest_between(sqrt2, R("3/2")) == Fraction(10, 7)
    assert simplest_between(None, R(-5)) == -6
    assert simplest_between(R(0), R(1)) == Fraction(1, 2)


def test_planar_intervals_and_cover():
    solver = CoveringSolver(planar_three(), XY)
    intervals = solver.get_unsat_intervals((R(0),))
    assert len(intervals) == 6
    finite = {b.value for J in intervals for b in (J.lower, J.upper) if b is not None}
    assert finite == {-1, Fraction(3, 4), Fraction(1, 2)}
    cover = compute_cover(intervals)
    assert bounds(cover) == [(None, Fraction(1, 2)), (-1, None)]
    check_cover_order(cover)


def test_single_interval_cover():
    assert bounds(compute_cover([I(None, None)])) == [(None, None)]


def test_point_needed_to_bridge():
    cover = compute_cover([I(None, 0), I(0, 0, "p"), I(0, None), I(-5, 5)])
    assert bounds(cover) == [(None, 0), (-5, 5), (0, None)] or covers_reals(cover)
    check_cover_order(cover)


def test_compute_cover_requires_cover():
    with pytest.raises(ValueError):
        compute_cover([I(None, 0)])


def test_interval_inside():
    assert interval_inside(I(0, 1), I(-1, 2))
    assert interval_inside(I(0, 0), I(-1, 2))
    assert interval_inside(I(-1, 0), I(-1, 0, "d"))
    assert not interval_inside(I(2, 2), I(-1, 2))


endpoint = st.one_of(st.none(), st.fractions(min_value=-6, max_value=6, max_denominator=3))


def _make(pairs):
    out = []
    for k, (a, b, point) in enumerate(pairs):
        if point and a is not None:
            out.append(I(a, a, f"c{k}"))
            continue
        if a is not None and b is not None and a >= b:
            a, b = b, a
            if a == b:
                continue
        out.append(I(a, b, f"c{k}"))
    return out


interval_sets = st.lists(st.tuples(endpoint, endpoint, st.booleans()), max_size=7).map(_make)


@settings(max_examples=300, deadline=None)
@given(interval_sets)
def test_sample_outside_is_outside(intervals):
    r = sample_outside(intervals)
    assert (r is None) == covers_reals(intervals)
    if r is not None:
        assert not any(J.contains(r) for J in intervals)


@settings(max_examples=300, deadline=None)
@given(interval_sets)
def test_compute_cover_is_ordered_and_irredundant(intervals):
    if not covers_reals(intervals):
        return
    cover = compute_cover(intervals)
    assert covers_reals(cover)
    check_cover_order(cover)
    for a, b in zip(cover, cover[1:]):
        if a.lower is not None and b.lower is not None:
            assert compare(a.lower, b.lower) <= 0
        if a.upper is not None and b.upper is not None:
            assert compare(a.upper, b.upper) <= 0
