"""Dense univariate polynomials over Z and Q.

A polynomial is a list of coefficients, lowest degree first, without
trailing zeros.  The zero polynomial is the empty list.  Functions never
mutate their arguments.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple, Union

Number = Union[int, Fraction]
UPoly = List[Number]


def strip(p: Sequence[Number]) -> UPoly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Number]) -> int:
    return len(p) - 1


def add(a: Sequence[Number], b: Sequence[Number]) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def neg(a: Sequence[Number]) -> UPoly:
    return [-c for c in a]


def sub(a: Sequence[Number], b: Sequence[Number]) -> UPoly:
    return add(a, neg(b))


def scale(a: Sequence[Number], c: Number) -> UPoly:
    if c == 0:
        return []
    return [x * c for x in a]


def mul(a: Sequence[Number], b: Sequence[Number]) -> UPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return strip(out)


def derivative(a: Sequence[Number]) -> UPoly:
    return strip([i * a[i] for i in range(1, len(a))])


def evaluate(a: Sequence[Number], x: Number) -> Number:
    acc: Number = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign(x: Number) -> int:
    return (x > 0) - (x < 0)


def sign_at(a: Sequence[int], x: Number) -> int:
    """Sign of an integer polynomial at a rational point, without fractions."""
    if not a:
        return 0
    if isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1):
        return sign(evaluate(a, int(x)))
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    acc = 0
    dpow = 1
    # sum a_i num^i den^(n-i), accumulated from the top
    for c in reversed(a):
        acc = acc * num + c * dpow
        dpow *= den
    return sign(acc)


def divmod_q(a: Sequence[Number], b: Sequence[Number]) -> Tuple[UPoly, UPoly]:
    """Euclidean division over Q."""
    b = strip(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    r = strip(r)
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(r) - 1 < db:
        return [], r
    q: UPoly = [Fraction(0)] * (len(r) - db)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        c = r[-1] / lb
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] -= c * bc
        r = strip(r)
    return strip(q), r


def rem_q(a: Sequence[Number], b: Sequence[Number]) -> UPoly:
    return divmod_q(a, b)[1]


def exact_div(a: Sequence[Number], b: Sequence[Number]) -> UPoly:
    q, r = divmod_q(a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def content(a: Sequence[Number]) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    num = 0
    den = 1
    for c in a:
        c = Fraction(c)
        num = gcd(num, c.numerator)
        den = den * c.denominator // gcd(den, c.denominator)
    return Fraction(num, den) if num else Fraction(0)


def primitive(a: Sequence[Number]) -> List[int]:
    """Integer primitive associate with positive leading coefficient."""
    a = strip(a)
    if not a:
        return []
    c = content(a)
    if a[-1] < 0:
        c = -c
    return [int(Fraction(x) / c) for x in a]


def gcd_q(a: Sequence[Number], b: Sequence[Number]) -> List[int]:
    """Gcd over Q, returned as an integer primitive polynomial (lc > 0)."""
    a = primitive(a)
    b = primitive(b)
    while b:
        r = rem_q(a, b)
        a, b = b, primitive(r)
    return primitive(a)


def sqf_part(a: Sequence[Number]) -> List[int]:
    a = primitive(a)
    if len(a) <= 2:
        return a
    g = gcd_q(a, derivative(a))
    if len(g) == 1:
        return a
    return primitive(exact_div(a, g))


def taylor_shift(a: Sequence[Number], c: Number) -> UPoly:
    """Coefficients of a(x + c)."""
    out = list(a)
    n = len(out)
    if c == 0:
        return out
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += c * out[j + 1]
    return out


def _shift_one(a: List[int]) -> List[int]:
    out = list(a)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += out[j + 1]
    return out


def sign_variations(coeffs: Sequence[Number]) -> int:
    count = 0
    last = 0
    for c in coeffs:
        s = sign(c)
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def descartes_count(a: Sequence[Number], lo: Number, hi: Number) -> int:
    """Descartes bound on the number of roots of ``a`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    # a(lo + (hi - lo) x), then roots in (0, 1)
    scaled = taylor_shift([Fraction(c) for c in a], lo)
    w = hi - lo
    scaled = [c * w ** i for i, c in enumerate(scaled)]
    return sign_variations(taylor_shift(list(reversed(scaled)), 1))


def cauchy_bound(a: Sequence[int]) -> int:
    """A power of two strictly larger than the absolute value of every root."""
    lc = abs(a[-1])
    m = max((abs(c) for c in a[:-1]), default=0)
    b = 1 + -(-m // lc)
    k = 1
    while k <= b:
        k *= 2
    return k


def _isolate_unit(q: List[int], bound: int) -> Tuple[List[Fraction], List[Tuple[Fraction, Fraction]]]:
    """Roots of q(bound * x) restricted to (0, 1), via Descartes bisection."""
    n = len(q) - 1
    base = [c * bound ** i for i, c in enumerate(q)]
    points: List[Fraction] = []
    intervals: List[Tuple[Fraction, Fraction]] = []
    stack = [(base, 0, 0)]
    while stack:
        poly, c, k = stack.pop()
        rev = strip(list(reversed(poly)))
        v = sign_variations(_shift_one(rev))
        if v == 0:
            continue
        lo = Fraction(bound * c, 2 ** k)
        hi = Fraction(bound * (c + 1), 2 ** k)
        if v == 1:
            intervals.append((lo, hi))
            continue
        left = [coef * 2 ** (n - i) for i, coef in enumerate(poly)]
        right = _shift_one(left)
        if right[0] == 0:
            points.append((lo + hi) / 2)
        stack.append((left, 2 * c, k + 1))
        stack.append((right, 2 * c + 1, k + 1))
    return points, intervals


def _tighten(p: List[int], lo: Fraction, hi: Fraction):
    """Shrink an isolating interval until neither endpoint is a root of p."""
    while sign_at(p, lo) == 0 or sign_at(p, hi) == 0:
        mid = (lo + hi) / 2
        if sign_at(p, mid) == 0:
            return mid
        # one root in (lo, hi), none at mid: parity of the bound decides
        if descartes_count(p, lo, mid) % 2 == 1:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def isolate_real_roots(a: Sequence[Number]) -> List[Union[Fraction, Tuple[Fraction, Fraction]]]:
    """Isolate the distinct real roots of a nonzero polynomial.

    Returns ascending entries, each either an exact rational root or an
    open interval (lo, hi) with rational endpoints that contains exactly one
    root and at whose endpoints the square-free part does not vanish.
    """
    p = sqf_part(a)
    if not p:
        raise ValueError("cannot isolate roots of the zero polynomial")
    out: List[Union[Fraction, Tuple[Fraction, Fraction]]] = []
    if len(p) == 1:
        return out
    full = p
    if p[0] == 0:
        out.append(Fraction(0))
        p = p[1:]
    if len(p) == 1:
        return out
    bound = cauchy_bound(p)
    entries: List[Union[Fraction, Tuple[Fraction, Fraction]]] = list(out)
    pts, ivs = _isolate_unit(p, bound)
    entries.extend(pts)
    entries.extend(ivs)
    mirrored = [c if i % 2 == 0 else -c for i, c in enumerate(p)]
    pts, ivs = _isolate_unit(mirrored, bound)
    entries.extend(-x for x in pts)
    entries.extend((-h, -l) for (l, h) in ivs)
    fixed: List[Union[Fraction, Tuple[Fraction, Fraction]]] = []
    for e in entries:
        if isinstance(e, tuple):
            fixed.append(_tighten(full, *e))
        else:
            fixed.append(e)
    fixed.sort(key=lambda e: e[0] if isinstance(e, tuple) else e)
    return fixed


def to_string(a: Sequence[Number], var: str = "x") -> str:
    """Human readable rendering, highest degree first."""
    a = strip(a)
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
