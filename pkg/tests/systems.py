"""Worked systems and random instance generators shared by the tests."""

import random
from fractions import Fraction
from pathlib import Path

from cdcac.poly import Constraint, Polynomial, VariableOrder, parse_polynomial

CORPUS = Path(__file__).parent / "corpus"

XY = VariableOrder(["x", "y"])
XYZ = VariableOrder(["x", "y", "z"])


def P(text, order=XY):
    return parse_polynomial(text, order)


def planar_three():
    return [
        Constraint(P("4*y - x^2 + 4"), "<", "c1"),
        Constraint(P("4*y - 4 + (x-1)^2"), ">", "c2"),
        Constraint(P("4*y - x - 2"), ">", "c3"),
    ]


def planar_five():
    return [
        Constraint(P("y - ((-x-3)^11 - (-x-3)^10 - 1)"), ">", "c1"),
        Constraint(P("2*y - x + 2"), "<", "c2"),
        Constraint(P("2*y - 1 + x^2"), ">", "c3"),
        Constraint(P("3*y + x + 2"), "<", "c4"),
        Constraint(P("y^3 - ((x-2)^11 - (x-2)^10 - 1)"), ">", "c5"),
    ]


def two_spheres():
    return [
        Constraint(P("x^2 + y^2 + z^2 - 1", XYZ), "<", "c1"),
        Constraint(P("x^2 + (y - 3/2)^2 + z^2 - 1", XYZ), "<", "c2"),
    ]


def three_surfaces():
    return [
        Constraint(P("-z^2 + y^2 + x^2 - 25", XYZ), ">", "f"),
        Constraint(P("(y - x - 6)*z^2 - 9*y^2 + x^2 - 1", XYZ), ">", "g"),
        Constraint(P("y^2 - 100", XYZ), "<", "h"),
    ]


RELATIONS = ["<", "<=", ">", ">=", "=", "!="]


def random_poly(rng: random.Random, order=XY, max_terms=4, max_degree=3, coeff=5) -> Polynomial:
    """A non-constant polynomial in two variables with small integer coefficients."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            i = rng.randint(0, max_degree)
            j = rng.randint(0, max_degree - i)
            terms[(i, j)] = rng.randint(-coeff, coeff)
        p = Polynomial(order, terms)
        if not p.is_constant():
            return p


def random_conjunction(rng: random.Random, order=XY):
    return [Constraint(random_poly(rng, order), rng.choice(RELATIONS), f"c{j}")
            for j in range(rng.randint(1, 3))]


def random_univariate(rng: random.Random, max_degree=8, coeff=20):
    while True:
        coeffs = [rng.randint(-coeff, coeff) for _ in range(rng.randint(1, max_degree) + 1)]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) >= 2:
            return coeffs


def sturm_count(coeffs) -> int:
    """Distinct real roots of a dense integer polynomial, counted with a Sturm sequence.

    Written independently of the library: plain Fraction arithmetic and sign
    variations at +/- infinity.
    """
    def trim(p):
        p = list(p)
        while p and p[-1] == 0:
            p.pop()
        return p

    def rem(a, b):
        a = [Fraction(c) for c in a]
        while len(a) >= len(b) and a:
            q = a[-1] / b[-1]
            shift = len(a) - len(b)
            for k, c in enumerate(b):
                a[shift + k] -= q * c
            a = trim(a)
        return a

    p = trim(coeffs)
    dp = trim([k * c for k, c in enumerate(p)][1:])
    seq = [p, dp]
    while True:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_pos = [1 if q[-1] > 0 else -1 for q in seq]
    at_neg = [(1 if q[-1] > 0 else -1) * (-1) ** (len(q) - 1) for q in seq]
    return variations(at_neg) - variations(at_pos)
