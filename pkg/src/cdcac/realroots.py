"""Real algebraic numbers, sample points and root isolation.

A real algebraic number is either a rational or a pair of a square-free
integer polynomial and an open rational interval that isolates one of its
roots.  Sample points are tuples of such numbers, one per variable in order.

Evaluation at a sample point is exact.  Rational coordinates are substituted
directly.  Every irrational coordinate is defined by its own univariate
polynomial, so a polynomial is reduced modulo those and zero tests go through
a gcd computed over the field generated by the lower coordinates.  Interval
arithmetic is only used as a fast filter for signs that are already known to
be non-zero.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import floor
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from . import upoly
from .poly import (
    ContractViolation,
    Polynomial,
    integral_primitive,
    pseudo_remainder,
    resultant,
    gcd as poly_gcd,
)

Rational = Union[int, Fraction]


class RealAlgebraic:
    """An exact real algebraic number.

    Rationals are stored directly.  Otherwise ``defining`` is a square-free
    primitive integer polynomial (dense, lowest degree first) with exactly one
    root in the open interval ``(lo, hi)``, non-zero at both endpoints.
    Refinement shrinks the interval in place; the value never changes.
    """

    __slots__ = ("_value", "defining", "lo", "hi")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, value: Optional[Rational] = None,
                 defining: Optional[Sequence[int]] = None,
                 lo: Optional[Rational] = None, hi: Optional[Rational] = None):
        if defining is None:
            if value is None:
                raise ValueError("need a value or a defining polynomial")
            self._value: Optional[Fraction] = Fraction(value)
            self.defining: Optional[List[int]] = None
            self.lo = self.hi = self._value
            return
        p = upoly.primitive(defining)
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("isolating interval must satisfy lo < hi")
        if upoly.sign_at(p, lo) == 0 or upoly.sign_at(p, hi) == 0:
            raise ValueError("defining polynomial vanishes at an interval endpoint")
        self._value = None
        self.defining = p
        self.lo, self.hi = lo, hi
        self._canonicalize()

    @classmethod
    def from_root(cls, defining: Sequence[int], entry) -> "RealAlgebraic":
        """Build from an entry returned by :func:`upoly.isolate_real_roots`."""
        if isinstance(entry, tuple):
            return cls(defining=defining, lo=entry[0], hi=entry[1])
        return cls(entry)

    def _canonicalize(self) -> None:
        # a rational root c/d of an integer polynomial has d | lc, so lc*root is an integer
        lc = abs(self.defining[-1])
        if len(self.defining) == 2:
            self._set_rational(Fraction(-self.defining[0], self.defining[1]))
            return
        while self._value is None and (self.hi - self.lo) * lc >= 1:
            self.refine()
        if self._value is not None:
            return
        k = floor(self.lo * lc) + 1
        if k < self.hi * lc:
            cand = Fraction(k, lc)
            if upoly.sign_at(self.defining, cand) == 0:
                self._set_rational(cand)

    def _set_rational(self, q: Fraction) -> None:
        self._value = q
        self.defining = None
        self.lo = self.hi = q

    # ------------------------------------------------------------------

    def is_rational(self) -> bool:
        return self._value is not None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("irrational algebraic number has no rational value")
        return self._value

    def interval(self) -> Tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    def refine(self) -> None:
        """Halve the isolating interval."""
        if self._value is not None:
            return
        mid = (self.lo + self.hi) / 2
        s = upoly.sign_at(self.defining, mid)
        if s == 0:
            self._set_rational(mid)
        elif s == upoly.sign_at(self.defining, self.lo):
            self.lo = mid
        else:
            self.hi = mid

    def refine_to(self, width: Fraction) -> None:
        while self._value is None and self.hi - self.lo > width:
            self.refine()

    def shrink_defining(self, factor: Sequence[int]) -> None:
        """Replace the defining polynomial by a factor that still has this root."""
        if self._value is not None:
            return
        f = upoly.primitive(factor)
        if upoly.sign_at(f, self.lo) * upoly.sign_at(f, self.hi) >= 0:
            raise ValueError("factor does not isolate this root")
        self.defining = f
        self._canonicalize()

    def approx(self, eps: Fraction = Fraction(1, 2 ** 40)) -> Fraction:
        self.refine_to(eps)
        if self._value is not None:
            return self._value
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        if self._value is not None:
            return float(self._value)
        return float(self.approx(Fraction(abs(self.lo) + abs(self.hi) + 1, 2 ** 60)))

    def __neg__(self) -> "RealAlgebraic":
        if self._value is not None:
            return RealAlgebraic(-self._value)
        p = [c if i % 2 == 0 else -c for i, c in enumerate(self.defining)]
        return RealAlgebraic(defining=p, lo=-self.hi, hi=-self.lo)

    def sign(self) -> int:
        if self._value is not None:
            return (self._value > 0) - (self._value < 0)
        return 1 if self.lo >= 0 else -1 if self.hi <= 0 else -_compare_rational(Fraction(0), self)

    def root_index(self) -> int:
        """1-based index of this root among the real roots of its defining polynomial."""
        if self._value is not None:
            raise ValueError("rational number has no root index")
        entries = upoly.isolate_real_roots(self.defining)
        for k, e in enumerate(entries, start=1):
            if compare(self, RealAlgebraic.from_root(self.defining, e)) == 0:
                return k
        raise AssertionError("root not found among the roots of its defining polynomial")

    # comparisons -------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            other = RealAlgebraic(other)
        if not isinstance(other, RealAlgebraic):
            return NotImplemented
        return compare(self, other)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __str__(self) -> str:
        if self._value is not None:
            return str(self._value)
        return f"root of {upoly.to_string(self.defining)} in ({self.lo}, {self.hi})"

    def __repr__(self) -> str:
        if self._value is not None:
            return f"RealAlgebraic({self._value})"
        return f"RealAlgebraic(defining={self.defining}, lo={self.lo}, hi={self.hi})"


def _compare_rational(q: Fraction, a: RealAlgebraic) -> int:
    """Compare rational q against irrational a."""
    if q <= a.lo:
        return -1
    if q >= a.hi:
        return 1
    # a is irrational, so q != a; q lies left of a iff p(q) has the sign of p(lo)
    if upoly.sign_at(a.defining, q) == upoly.sign_at(a.defining, a.lo):
        return -1
    return 1


def compare(a: RealAlgebraic, b: RealAlgebraic) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if a is b:
        return 0
    if a.is_rational() and b.is_rational():
        return (a.value > b.value) - (a.value < b.value)
    if a.is_rational():
        return _compare_rational(a.value, b)
    if b.is_rational():
        return -_compare_rational(b.value, a)
    if a.hi <= b.lo:
        return -1
    if b.hi <= a.lo:
        return 1
    g = upoly.gcd_q(a.defining, b.defining)
    if len(g) > 1:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        # endpoints of the overlap are endpoints of a or b, so g does not vanish there;
        # g has at most one root in each isolating interval
        if upoly.sign_at(g, lo) != upoly.sign_at(g, hi):
            if len(g) < len(a.defining):
                a.defining, a.lo, a.hi = g, lo, hi
            if len(g) < len(b.defining):
                b.defining, b.lo, b.hi = g, lo, hi
            return 0
    while True:
        a.refine()
        b.refine()
        if a.is_rational() or b.is_rational():
            return compare(a, b)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1


def sort_unique(values: Iterable[RealAlgebraic]) -> List[RealAlgebraic]:
    """Ascending list with duplicates (by value) removed."""
    ordered = sorted(values, key=cmp_to_key(compare))
    out: List[RealAlgebraic] = []
    for v in ordered:
        if not out or compare(out[-1], v) != 0:
            out.append(v)
    return out


def isolate_roots(p) -> List[RealAlgebraic]:
    """Distinct real roots of a univariate polynomial with rational coefficients, ascending.

    ``p`` is either a :class:`Polynomial` in a single variable or a dense
    coefficient list.
    """
    coeffs = p.to_univariate() if isinstance(p, Polynomial) else upoly.strip(p)
    if not coeffs:
        raise ContractViolation("cannot isolate the roots of the zero polynomial")
    q = upoly.sqf_part(coeffs)
    return [RealAlgebraic.from_root(q, e) for e in upoly.isolate_real_roots(q)]


# ---------------------------------------------------------------------------
# sample points

Sample = Tuple[RealAlgebraic, ...]


def as_sample(values: Iterable) -> Sample:
    return tuple(v if isinstance(v, RealAlgebraic) else RealAlgebraic(v) for v in values)


def _defining_poly(p: Polynomial, a: RealAlgebraic, j: int) -> Polynomial:
    return Polynomial.from_univariate(p.order, a.defining, j)


def reduce_at(e: Polynomial, sample: Sample) -> Polynomial:
    """A polynomial that agrees with e at the sample, with rational coordinates
    substituted and irrational ones reduced below their defining degree."""
    rationals: Dict[int, Fraction] = {}
    for j, a in enumerate(sample):
        if a.is_rational():
            if e.degree(j) > 0:
                rationals[j] = a.value
    if rationals:
        e = e.substitute(rationals)
    for j, a in enumerate(sample):
        if not a.is_rational() and e.degree(j) >= len(a.defining) - 1:
            e = _rem_univariate(e, a.defining, j)
    return e


def _rem_univariate(e: Polynomial, m: Sequence[int], j: int) -> Polynomial:
    coeffs = e.coeffs(j)
    d = len(m) - 1
    lc = Fraction(m[-1])
    for k in range(len(coeffs) - 1, d - 1, -1):
        c = coeffs[k]
        if c.is_zero():
            continue
        f = c * (1 / lc)
        for i in range(d):
            if m[i]:
                coeffs[k - d + i] = coeffs[k - d + i] - f * m[i]
    return Polynomial.from_coeffs(e.order, coeffs[:d], j)


def _ipow(lo: Fraction, hi: Fraction, k: int) -> Tuple[Fraction, Fraction]:
    if k % 2 or lo >= 0:
        return lo ** k, hi ** k
    if hi <= 0:
        return hi ** k, lo ** k
    return Fraction(0), max(lo ** k, hi ** k)


def interval_eval(e: Polynomial, boxes: Sequence[Tuple[Fraction, Fraction]]) -> Tuple[Fraction, Fraction]:
    """Enclosure of e over a box; variables beyond the box must be absent."""
    tlo = thi = Fraction(0)
    for exp, c in e.terms.items():
        lo = hi = c
        for v, k in enumerate(exp):
            if not k:
                continue
            a, b = boxes[v]
            if a == b:
                p = a ** k
                lo, hi = (lo * p, hi * p) if p >= 0 else (hi * p, lo * p)
                continue
            a, b = _ipow(a, b, k)
            prods = (lo * a, lo * b, hi * a, hi * b)
            lo, hi = min(prods), max(prods)
        tlo += lo
        thi += hi
    return tlo, thi


def _boxes(sample: Sample) -> List[Tuple[Fraction, Fraction]]:
    return [a.interval() for a in sample]


def _strip_top(e: Polynomial, j: int, sample: Sample) -> Polynomial:
    """Drop leading coefficients in x_j that vanish at the sample."""
    coeffs = e.coeffs(j)
    while coeffs and is_zero_at(coeffs[-1], sample):
        coeffs.pop()
    return Polynomial.from_coeffs(e.order, coeffs, j) if coeffs else e.zero()


def _gcd_over(m: Polynomial, b: Polynomial, j: int, sample: Sample) -> Polynomial:
    """Gcd in x_j over the field generated by ``sample`` (coordinates below j).

    ``m`` must have a leading coefficient that is non-zero at the sample.
    The result has a leading coefficient that is non-zero at the sample.
    """
    a = m
    b = _strip_top(reduce_at(b, sample), j, sample)
    while True:
        if b.is_zero():
            return a
        if b.degree(j) <= 0:
            return b.one()
        r = pseudo_remainder(a, b, j)
        r = _strip_top(reduce_at(r, sample), j, sample)
        if not r.is_zero():
            r = integral_primitive(r)
        a, b = b, r


def _sign_change(g: Polynomial, j: int, lo: Fraction, hi: Fraction, sample: Sample) -> bool:
    s1 = sign_at(g.substitute({j: lo}), sample)
    s2 = sign_at(g.substitute({j: hi}), sample)
    return s1 * s2 < 0


def is_zero_at(e: Polynomial, sample: Sample) -> bool:
    """Exact test whether e vanishes at a sample assigning all of its variables."""
    e = reduce_at(e, sample)
    if e.is_zero():
        return True
    if e.is_constant():
        return False
    j = e.mvar()
    if j >= len(sample):
        raise ContractViolation("sample does not assign every variable of the polynomial")
    lo, hi = interval_eval(e, _boxes(sample))
    if lo > 0 or hi < 0:
        return False
    a = sample[j]
    g = _gcd_over(_defining_poly(e, a, j), e, j, sample[:j])
    if g.degree(j) <= 0:
        return False
    return _sign_change(g, j, a.lo, a.hi, sample[:j])


def sign_at(e: Polynomial, sample: Sample) -> int:
    """Exact sign of e at a sample assigning all of its variables."""
    if is_zero_at(e, sample):
        return 0
    e = reduce_at(e, sample)
    if e.is_constant():
        c = e.constant_value()
        return (c > 0) - (c < 0)
    while True:
        lo, hi = interval_eval(e, _boxes(sample))
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        for a in sample:
            a.refine()


class SpecializedPolynomial:
    """A polynomial with a sample point substituted for its lower variables.

    The remaining variable of interest is ``x_i`` with ``i = len(sample)``.
    ``poly`` agrees with the original at the sample, has rational coordinates
    substituted and carries no leading coefficient (in ``x_i``) that vanishes
    there.
    """

    def __init__(self, original: Polynomial, sample: Sample):
        i = len(sample)
        self.original = original
        self.sample = sample
        self.var = i
        e = reduce_at(original, sample)
        if e.mvar() > i:
            raise ContractViolation("polynomial has variables above the next one")
        if i < len(original.order):
            e = _strip_top(e, i, sample)
        else:
            e = e.zero() if is_zero_at(e, sample) else e
        self.poly = e
        self._roots: Optional[List[RealAlgebraic]] = None

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def degree(self) -> int:
        if self.poly.is_zero():
            return -1
        if self.var >= len(self.poly.order):
            return 0
        return self.poly.degree(self.var)

    def is_constant(self) -> bool:
        return self.degree() <= 0

    def sign(self) -> int:
        """Sign of a constant specialization."""
        if not self.is_constant():
            raise ContractViolation("sign of a non-constant specialization")
        if self.poly.is_zero():
            return 0
        return sign_at(self.poly, self.sample)

    def sign_at(self, value: RealAlgebraic) -> int:
        return sign_at(self.original, self.sample + (value,))

    def roots(self) -> List[RealAlgebraic]:
        if self._roots is None:
            if self.is_zero():
                raise ContractViolation("roots of a nullified polynomial")
            self._roots = [] if self.is_constant() else _roots(self.poly, self.sample)
        return self._roots

    def __str__(self) -> str:
        return str(self.poly)


def evaluate_partial(p: Polynomial, sample: Sample) -> SpecializedPolynomial:
    return SpecializedPolynomial(p, as_sample(sample))


def _eliminate(q: Polynomial, j: int, sample: Sample) -> Polynomial:
    a = sample[j]
    while True:
        m = _defining_poly(q, a, j)
        r = resultant(q, m, j)
        if not r.is_zero():
            return r
        g = poly_gcd(q, m).to_univariate(j)
        if upoly.sign_at(g, a.lo) * upoly.sign_at(g, a.hi) < 0:
            raise ArithmeticError(
                "elimination of an algebraic coordinate degenerated to zero")
        a.shrink_defining(upoly.exact_div(a.defining, g))
        if a.is_rational():
            return q.substitute({j: a.value})


def _roots(f: Polynomial, sample: Sample) -> List[RealAlgebraic]:
    i = len(sample)
    others = [v for v in f.variables() if v != i]
    if not others:
        return isolate_roots(f.to_univariate(i))
    q = f
    for j in sorted(others, reverse=True):
        if q.degree(j) > 0:
            q = _eliminate(q, j, sample)
    qs = upoly.sqf_part(q.to_univariate(i))
    entries = upoly.isolate_real_roots(qs)
    if not entries:
        return []
    g = _gcd_over(Polynomial.from_univariate(f.order, qs, i), f, i, sample)
    if g.degree(i) <= 0:
        return []
    out = []
    for e in entries:
        if isinstance(e, tuple):
            if _sign_change(g, i, e[0], e[1], sample):
                out.append(RealAlgebraic(defining=qs, lo=e[0], hi=e[1]))
        elif is_zero_at(g.substitute({i: e}), sample):
            out.append(RealAlgebraic(e))
    return out


def real_roots_with_check(polys: Iterable[Polynomial], sample: Sequence) -> Tuple[List[RealAlgebraic], Set[Polynomial]]:
    """Merged ascending roots of all specializations, plus the nullified inputs."""
    sample = as_sample(sample)
    roots: List[RealAlgebraic] = []
    nullified: Set[Polynomial] = set()
    for p in polys:
        sp = SpecializedPolynomial(p, sample)
        if sp.is_zero():
            nullified.add(p)
        else:
            roots.extend(sp.roots())
    return sort_unique(roots), nullified


__all__ = [
    "RealAlgebraic",
    "Sample",
    "SpecializedPolynomial",
    "as_sample",
    "compare",
    "evaluate_partial",
    "interval_eval",
    "is_zero_at",
    "isolate_roots",
    "real_roots_with_check",
    "reduce_at",
    "sign_at",
    "sort_unique",
]
