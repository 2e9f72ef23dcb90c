import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cdcac.poly import ContractViolation, VariableOrder
from cdcac.realroots import (RealAlgebraic, compare, evaluate_partial, isolate_roots, real_roots_with_check,
                             sign_at)
from systems import XY, XYZ, P, random_univariate, sturm_count, three_surfaces

X = VariableOrder(["x"])


def sqrt2():
    return RealAlgebraic.from_root([-2, 0, 1], (Fraction(1), Fraction(2)))


def R(q):
    return RealAlgebraic(Fraction(q))


def test_isolate_examples():
    assert [r.value for r in isolate_roots(P("x^2 - x - 6", X))] == [-2, 3]
    assert [r.value for r in isolate_roots(P("4*x + 4", X))] == [-1]
    assert isolate_roots(P("x^2 + 1", X)) == []
    with pytest.raises(ContractViolation):
        isolate_roots(P("0", X))


def test_irrational_roots():
    roots = isolate_roots([-2, 0, 1])
    assert len(roots) == 2 and not roots[0].is_rational()
    assert compare(roots[1], sqrt2()) == 0
    assert roots[1].root_index() == 2


def test_sign_at_algebraic():
    assert sign_at(P("x^2 - x - 6", X), (sqrt2(),)) == -1
    assert sign_at(P("x^2 - 2", X), (sqrt2(),)) == 0
    p4 = P("-y^3 + y^2*x + 15*y^2 - y*x^2 + 25*y + x^3 + 5*x^2 - 25*x - 149")
    assert sign_at(p4, (R(0), R(0))) == -1


def test_compare_examples():
    assert compare(sqrt2(), R("3/2")) < 0
    other = RealAlgebraic.from_root([-4, 0, 0, 0, 1], (Fraction(1), Fraction(2)))
    assert compare(sqrt2(), other) == 0
    assert compare(R(-2), R(3)) < 0


def test_rational_root_is_canonical():
    r = RealAlgebraic.from_root([-6, -1, 1], (Fraction(2), Fraction(4)))
    assert r.is_rational() and r.value == 3


def test_evaluate_partial():
    f, g, h = (c.poly for c in three_surfaces())
    point = (R(5), R(1), R(0))
    assert [f.evaluate([5, 1, 0]), g.evaluate([5, 1, 0]), h.evaluate([5, 1, 0])] == [1, 15, -99]
    assert [sign_at(p, point) for p in (f, g, h)] == [1, 1, -1]
    sp = evaluate_partial(P("4*y - x^2 + 4"), (R(0),))
    assert sp.poly == P("4*y + 4")
    assert evaluate_partial(P("z*y - x", XYZ), (R(0), R(0))).is_zero()


def test_real_roots_with_check():
    roots, null = real_roots_with_check([P("x^2 + y^2 - 1")], (R(0),))
    assert [r.value for r in roots] == [-1, 1] and not null
    zy = P("z*y - x", XYZ)
    roots, null = real_roots_with_check([zy], (R(0), R(0)))
    assert roots == [] and null == {zy}
    roots, _ = real_roots_with_check([P("x - 1", X), P("x + 1", X), P("x", X)], ())
    assert [r.value for r in roots] == [-1, 0, 1]


def test_roots_over_algebraic_sample():
    roots, _ = real_roots_with_check([P("y^2 - x")], (sqrt2(),))
    assert len(roots) == 2
    fourth = RealAlgebraic.from_root([-2, 0, 0, 0, 1], (Fraction(1), Fraction(2)))
    assert compare(roots[1], fourth) == 0 and compare(roots[0], -fourth) == 0


def test_sturm_cross_check_small():
    rng = random.Random(7)
    for _ in range(200):
        p = random_univariate(rng)
        roots = isolate_roots(p)
        assert len(roots) == sturm_count(p)
        assert all(compare(a, b) < 0 for a, b in zip(roots, roots[1:]))


def test_sturm_counter_itself():
    assert sturm_count([-6, -1, 1]) == 2
    assert sturm_count([1, 0, 1]) == 0
    assert sturm_count([1, -2, 1]) == 1
    assert sturm_count([0, -1, 0, 1]) == 3


fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 30), st.integers(0, 30), fracs, fracs)
def test_compare_total_order(i, j, q1, q2):
    pool = isolate_roots([-2, 0, 1]) + isolate_roots([-3, 0, 0, 1]) + isolate_roots([1, -3, 0, 1]) + [R(q1), R(q2)]
    a, b, c = pool[i % len(pool)], pool[j % len(pool)], R(q1)
    assert compare(a, b) == -compare(b, a)
    assert compare(R(q1), R(q2)) == (q1 > q2) - (q1 < q2)
    if compare(a, b) <= 0 and compare(b, c) <= 0:
        assert compare(a, c) <= 0


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 5), st.integers(1, 12))
def test_refinement_does_not_change_answers(k, steps):
    pool = isolate_roots([-2, 0, 1]) + isolate_roots([1, -3, 0, 1])
    a = pool[k % len(pool)]
    polys = [P("x^2 - x - 6", X), P("x^3 - 3*x + 1", X), P("2*x - 3", X)]
    before = [sign_at(p, (a,)) for p in polys] + [compare(a, R("3/2"))]
    for _ in range(steps):
        a.refine()
    after = [sign_at(p, (a,)) for p in polys] + [compare(a, R("3/2"))]
    assert before == after


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4), st.lists(st.integers(-4, 4), min_size=1, max_size=4),
       fracs)
def test_specialization_is_a_ring_map(a, b, q):
    pa = P(" + ".join(f"({c})*y^{k}*x" for k, c in enumerate(a)))
    pb = P(" + ".join(f"({c})*y^{k} + x^{k}" for k, c in enumerate(b)))
    s = (R(q),)
    ea, eb = evaluate_partial(pa, s).poly, evaluate_partial(pb, s).poly
    assert evaluate_partial(pa + pb, s).poly == ea + eb
    assert evaluate_partial(pa * pb, s).poly == ea * eb


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=4))
def test_sign_zero_iff_vanishes(coeffs):
    p = P(" + ".join(f"({c})*x^{k}" for k, c in enumerate(coeffs)) + " + y*x - y")
    for r in isolate_roots([-2, 0, 1]) + [R(1), R(0)]:
        s = (r, R(1))
        assert (sign_at(p, s) == 0) == evaluate_partial(p, s).is_zero()
