"""Exact multivariate polynomials over Q with a fixed variable order.

Variables are referred to by their position in the order: index 0 is the
lowest variable x_1.  A polynomial stores a sparse map from exponent tuples
to non-zero rational coefficients.  Values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import upoly

Exponent = Tuple[int, ...]
Coefficient = Union[int, Fraction]


class ContractViolation(ValueError):
    """An operation was called outside of its precondition."""


class VariableOrder(tuple):
    """Ordered tuple of distinct variable names, lowest first."""

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable in order {names!r}")
        return super().__new__(cls, names)

    def index(self, name: str) -> int:  # type: ignore[override]
        try:
            return super().index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None


def _lex_high_key(exp: Exponent) -> Tuple[int, ...]:
    # lex order comparing the highest variable first
    return tuple(reversed(exp))


def _grlex_key(exp: Exponent) -> Tuple[int, ...]:
    return (sum(exp),) + tuple(reversed(exp))


class Polynomial:
    __slots__ = ("order", "terms", "_hash", "_key")

    def __init__(self, order: Sequence[str], terms: Optional[Mapping[Exponent, Coefficient]] = None):
        if not isinstance(order, VariableOrder):
            order = VariableOrder(order)
        self.order: VariableOrder = order
        n = len(order)
        clean: Dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c == 0:
                    continue
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                clean[tuple(e)] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms: Dict[Exponent, Fraction] = clean
        self._hash: Optional[int] = None
        self._key = None

    # construction -----------------------------------------------------

    @classmethod
    def _raw(cls, order: VariableOrder, terms: Dict[Exponent, Fraction]) -> "Polynomial":
        p = object.__new__(cls)
        p.order = order
        p.terms = terms
        p._hash = None
        p._key = None
        return p

    @classmethod
    def constant(cls, order: Sequence[str], c: Coefficient) -> "Polynomial":
        order = VariableOrder(order) if not isinstance(order, VariableOrder) else order
        return cls(order, {(0,) * len(order): c})

    @classmethod
    def variable(cls, order: Sequence[str], name: str, power: int = 1) -> "Polynomial":
        order = VariableOrder(order) if not isinstance(order, VariableOrder) else order
        e = [0] * len(order)
        e[order.index(name)] = power
        return cls(order, {tuple(e): 1})

    @classmethod
    def from_coeffs(cls, order: VariableOrder, coeffs: Sequence["Polynomial"], v: int) -> "Polynomial":
        """Inverse of :meth:`coeffs`: sum of coeffs[k] * x_v^k."""
        terms: Dict[Exponent, Fraction] = {}
        for k, c in enumerate(coeffs):
            for e, a in c.terms.items():
                ne = list(e)
                ne[v] += k
                terms[tuple(ne)] = a
        return cls._raw(order, terms)

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self.order, {})

    def one(self) -> "Polynomial":
        return Polynomial._raw(self.order, {(0,) * len(self.order): Fraction(1)})

    def const(self, c: Coefficient) -> "Polynomial":
        return Polynomial.constant(self.order, c)

    # structural queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ContractViolation("polynomial is not constant")
        return next(iter(self.terms.values()))

    def mvar(self) -> int:
        """Index of the main variable, or -1 for constants."""
        m = -1
        for e in self.terms:
            for i in range(len(e) - 1, m, -1):
                if e[i]:
                    m = i
                    break
        return m

    def level(self) -> int:
        """1-based level of the main variable; 0 for constants."""
        return self.mvar() + 1

    def variables(self) -> List[int]:
        present = set()
        for e in self.terms:
            present.update(i for i, k in enumerate(e) if k)
        return sorted(present)

    def degree(self, v: Optional[int] = None) -> int:
        """Degree in variable v (total degree if v is None); -1 for zero."""
        if not self.terms:
            return -1
        if v is None:
            return max(sum(e) for e in self.terms)
        return max(e[v] for e in self.terms)

    def coeffs(self, v: int) -> List["Polynomial"]:
        """Coefficients with respect to x_v, lowest power first."""
        d = self.degree(v)
        if d < 0:
            return []
        buckets: List[Dict[Exponent, Fraction]] = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            k = e[v]
            if k:
                e = e[:v] + (0,) + e[v + 1:]
            buckets[k][e] = c
        return [Polynomial._raw(self.order, b) for b in buckets]

    def lc(self, v: Optional[int] = None) -> "Polynomial":
        if v is None:
            v = self.mvar()
            if v < 0:
                return self
        return self.coeffs(v)[-1]

    def leading_numeric(self) -> Fraction:
        """Numeric coefficient of the lex-largest term (highest variable first)."""
        e = max(self.terms, key=_lex_high_key)
        return self.terms[e]

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.order != self.order:
            raise ContractViolation("polynomials over different variable orders")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial._raw(self.order, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.zero()
            return Polynomial._raw(self.order, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Polynomial._raw(self.order, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / Fraction(other))
        return exact_divide(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution ------------------------------------------

    def derivative(self, v: int) -> "Polynomial":
        terms: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            k = e[v]
            if k:
                ne = e[:v] + (k - 1,) + e[v + 1:]
                terms[ne] = c * k
        return Polynomial._raw(self.order, terms)

    def substitute(self, values: Mapping[int, Coefficient]) -> "Polynomial":
        """Substitute rational values for some variables (exponents become zero)."""
        terms: Dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for v, val in values.items():
                k = ne[v]
                if k:
                    c = c * Fraction(val) ** k
                    ne[v] = 0
                    if c == 0:
                        break
            if c:
                key = tuple(ne)
                s = terms.get(key, 0) + c
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return Polynomial._raw(self.order, terms)

    def evaluate(self, values: Sequence[Coefficient]) -> Fraction:
        """Value at a full rational point given in variable order."""
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in enumerate(e):
                if k:
                    t *= Fraction(values[v]) ** k
            total += t
        return total

    def to_univariate(self, v: Optional[int] = None) -> List[Fraction]:
        """Dense coefficient list in x_v; other variables must be absent."""
        if v is None:
            v = max(self.mvar(), 0)
        out = [Fraction(0)] * (self.degree(v) + 1 if self.terms else 0)
        for e, c in self.terms.items():
            if any(k for i, k in enumerate(e) if i != v):
                raise ContractViolation("polynomial is not univariate in the requested variable")
            out[e[v]] += c
        return upoly.strip(out)

    @classmethod
    def from_univariate(cls, order: VariableOrder, coeffs: Sequence[Coefficient], v: int) -> "Polynomial":
        n = len(order)
        terms = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[v] = k
                terms[tuple(e)] = Fraction(c)
        return cls._raw(order, terms)

    # rendering ------------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                self.order[v] if k == 1 else f"{self.order[v]}^{k}"
                for v in range(len(e) - 1, -1, -1)
                if (k := e[v])
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def sort_key(self):
        """Deterministic total order used for canonical iteration over sets."""
        if self._key is None:
            m = self.mvar()
            self._key = (m + 1, self.degree(m) if m >= 0 else 0, len(self.terms), str(self))
        return self._key


RELATIONS = ("<", "<=", ">", ">=", "=", "!=")

_HOLDS = {
    "<": lambda s: s < 0,
    "<=": lambda s: s <= 0,
    ">": lambda s: s > 0,
    ">=": lambda s: s >= 0,
    "=": lambda s: s == 0,
    "!=": lambda s: s != 0,
}

NEGATED = {"<": ">=", "<=": ">", ">": "<=", ">=": "<", "=": "!=", "!=": "="}


@dataclass(frozen=True)
class Constraint:
    """``poly relation 0`` with a stable identifier used for origin tracking."""

    poly: Polynomial
    relation: str
    id: object

    def __post_init__(self):
        if self.relation not in _HOLDS:
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, sign: int) -> bool:
        return _HOLDS[self.relation](sign)

    def negated(self, new_id=None) -> "Constraint":
        return Constraint(self.poly, NEGATED[self.relation], self.id if new_id is None else new_id)

    def level(self) -> int:
        return self.poly.level()

    def __str__(self) -> str:
        return f"{self.poly} {self.relation} 0"


def parse_polynomial(text: str, order: Sequence[str]) -> "Polynomial":
    """Parse the canonical text form (``+ - * ^``, integers, rationals a/b, parentheses)."""
    order = VariableOrder(order) if not isinstance(order, VariableOrder) else order
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() in ("*", "/"):
            op = take()
            rhs = power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by non-zero constants")
                acc = acc / rhs.constant_value()
        return acc

    def power():
        base = atom()
        if peek() == "^":
            take()
            k = take()
            if not k.isdigit():
                raise ValueError(f"bad exponent {k!r}")
            base = base ** int(k)
        return base

    def atom():
        tok = take()
        if tok == "(":
            v = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return v
        if tok == "-":
            return -power()
        if tok[0].isdigit():
            return Polynomial.constant(order, Fraction(tok))
        return Polynomial.variable(order, tok)

    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input near {tokens[pos]!r}")
    return result


def _tokenize(text: str) -> List[str]:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            out.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "."):
                j += 1
            out.append(text[i:j])
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            out.append(text[i:j])
            i = j
        else:
            raise ValueError(f"unexpected character {ch!r}")
    return out


# ---------------------------------------------------------------------------
# division, content, gcd


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """a / b, raising ArithmeticError when b does not divide a."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero():
        return a
    if b.is_constant():
        return a * (1 / b.constant_value())
    v = max(a.mvar(), b.mvar())
    db = b.degree(v)
    if db == 0:
        return Polynomial.from_coeffs(a.order, [exact_divide(c, b) for c in a.coeffs(v)], v)
    bc = b.coeffs(v)
    lb = bc[-1]
    rem = a.coeffs(v)
    if len(rem) - 1 < db:
        raise ArithmeticError("inexact polynomial division")
    quot = [a.zero()] * (len(rem) - db)
    while len(rem) - 1 >= db:
        k = len(rem) - 1 - db
        q = exact_divide(rem[-1], lb)
        quot[k] = q
        for i, c in enumerate(bc):
            rem[i + k] = rem[i + k] - q * c
        if not rem[-1].is_zero():
            raise ArithmeticError("inexact polynomial division")
        while rem and rem[-1].is_zero():
            rem.pop()
    if rem:
        raise ArithmeticError("inexact polynomial division")
    return Polynomial.from_coeffs(a.order, quot, v)


def divides(b: Polynomial, a: Polynomial) -> bool:
    try:
        exact_divide(a, b)
    except ArithmeticError:
        return False
    return True


def pseudo_remainder(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    """prem(a, b) = lc(b)^(deg a - deg b + 1) * a mod b, with respect to x_v."""
    db = b.degree(v)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    da = a.degree(v)
    if da < db:
        return a
    bc = b.coeffs(v)
    lb = bc[-1]
    rem = a.coeffs(v)
    steps = da - db + 1
    while rem and len(rem) - 1 >= db:
        k = len(rem) - 1 - db
        lr = rem[-1]
        rem = [c * lb for c in rem]
        for i, c in enumerate(bc):
            rem[i + k] = rem[i + k] - lr * c
        rem.pop()
        steps -= 1
        while rem and rem[-1].is_zero():
            rem.pop()
    result = Polynomial.from_coeffs(a.order, rem, v) if rem else a.zero()
    if steps > 0:
        result = result * lb ** steps
    return result


def numeric_content(p: Polynomial) -> Fraction:
    return upoly.content(list(p.terms.values()))


def integral_primitive(p: Polynomial) -> Polynomial:
    """Scale by a positive rational so that coefficients are coprime integers."""
    if p.is_zero():
        return p
    c = numeric_content(p)
    if c == 1:
        return p
    return p * (1 / c)


def content(p: Polynomial, v: int) -> Polynomial:
    """Gcd of the coefficients of p with respect to x_v (normalized)."""
    cs = [c for c in p.coeffs(v) if not c.is_zero()]
    g = p.zero()
    for c in cs:
        g = gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return p.one()
    return g


def primitive_part(p: Polynomial, v: int) -> Polynomial:
    if p.is_zero():
        return p
    c = content(p, v)
    return integral_primitive(exact_divide(p, c))


def gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized (integral primitive, positive leading term)."""
    a._check(b)
    if a.is_zero():
        return _unit_normal(b)
    if b.is_zero():
        return _unit_normal(a)
    if a.is_constant() or b.is_constant():
        return a.one()
    v = max(a.mvar(), b.mvar())
    if a.degree(v) == 0:
        return gcd(a, content(b, v))
    if b.degree(v) == 0:
        return gcd(content(a, v), b)
    ca, cb = content(a, v), content(b, v)
    c = gcd(ca, cb)
    pa, pb = primitive_part(a, v), primitive_part(b, v)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while True:
        r = pseudo_remainder(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        if r.degree(v) == 0:
            g = a.one()
            break
        pa, pb = pb, primitive_part(r, v)
    return _unit_normal(c * primitive_part(g, v))


def _unit_normal(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    p = integral_primitive(p)
    if p.leading_numeric() < 0:
        p = -p
    return p


# ---------------------------------------------------------------------------
# resultants and discriminants


def resultant(p: Polynomial, q: Polynomial, v: int) -> Polynomial:
    """Sylvester resultant of p and q with respect to x_v (subresultant PRS)."""
    p._check(q)
    dp, dq = p.degree(v), q.degree(v)
    if dp < 1 or dq < 1:
        raise ContractViolation(
            f"resultant requires positive degree in {p.order[v]} (got {dp} and {dq})")
    return _subresultant_resultant(p, q, v)


def _subresultant_resultant(a: Polynomial, b: Polynomial, v: int) -> Polynomial:
    sign = 1
    if a.degree(v) < b.degree(v):
        a, b = b, a
        if a.degree(v) % 2 == 1 and b.degree(v) % 2 == 1:
            sign = -sign
    g = a.one()
    h = a.one()
    while True:
        da, db = a.degree(v), b.degree(v)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            sign = -sign
        r = pseudo_remainder(a, b, v)
        if r.is_zero():
            return a.zero()
        a = b
        b = exact_divide(r, g * h ** delta)
        g = a.lc(v)
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_divide(g ** delta, h ** (delta - 1))
        if b.degree(v) == 0:
            da = a.degree(v)
            if da == 1:
                res = b
            else:
                res = exact_divide(b ** da, h ** (da - 1))
            return res if sign > 0 else -res


def discriminant(p: Polynomial, v: int) -> Polynomial:
    """(-1)^(d(d-1)/2) res(p, dp/dv) / lc(p), with respect to x_v."""
    d = p.degree(v)
    if d < 2:
        if d < 1:
            raise ContractViolation("discriminant of a polynomial constant in the variable")
        return p.one()
    r = resultant(p, p.derivative(v), v)
    r = exact_divide(r, p.lc(v))
    if (d * (d - 1) // 2) % 2:
        r = -r
    return r


# ---------------------------------------------------------------------------
# normalization and square-free bases


def normalize(p: Polynomial) -> Optional[Polynomial]:
    """Primitive integral associate with positive leading coefficient; None for constants."""
    if p.is_zero():
        raise ContractViolation("cannot normalize the zero polynomial")
    if p.is_constant():
        return None
    return _unit_normal(p)


def squarefree_factors(p: Polynomial) -> List[Polynomial]:
    """Normalized square-free, non-constant polynomials with the zero set of p."""
    if p.is_zero():
        raise ContractViolation("square-free factors of the zero polynomial")
    if p.is_constant():
        return []
    v = p.mvar()
    c = content(p, v)
    pp = exact_divide(p, c)
    # Yun: one factor per multiplicity
    dp = pp.derivative(v)
    g = gcd(pp, dp)
    w = exact_divide(pp, g)
    d = exact_divide(dp, g) - w.derivative(v)
    out = []
    while not w.is_constant():
        a = gcd(w, d) if not d.is_zero() else w
        if not a.is_constant():
            out.append(_unit_normal(a))
        w = exact_divide(w, a)
        d = exact_divide(d, a) - w.derivative(v)
    return squarefree_factors(c) + out


def square_free_basis(polys: Iterable[Polynomial]) -> List[Polynomial]:
    """Pairwise coprime, square-free, normalized basis of the product's zero set.

    Constants are dropped; the result is sorted canonically.
    """
    todo: List[Polynomial] = []
    for p in polys:
        if p.is_zero():
            raise ContractViolation("square-free basis of the zero polynomial")
        todo.extend(squarefree_factors(p))
    basis: List[Polynomial] = []
    while todo:
        f = todo.pop()
        if f.is_constant():
            continue
        for i, b in enumerate(basis):
            if b == f:
                break
            g = gcd(f, b)
            if not g.is_constant():
                del basis[i]
                todo.append(g)
                rest_b = exact_divide(b, g)
                rest_f = exact_divide(f, g)
                for r in (rest_b, rest_f):
                    if not r.is_constant():
                        todo.append(_unit_normal(r))
                break
        else:
            basis.append(f)
    basis.sort(key=Polynomial.sort_key)
    return basis


def required_leading_coefficients(p: Polynomial, v: int) -> List[Polynomial]:
    """All coefficients of p in x_v from the top down (helper for projection)."""
    return list(reversed([c for c in p.coeffs(v)]))


__all__ = [
    "Constraint",
    "ContractViolation",
    "VariableOrder",
    "Polynomial",
    "parse_polynomial",
    "exact_divide",
    "divides",
    "pseudo_remainder",
    "content",
    "primitive_part",
    "integral_primitive",
    "gcd",
    "resultant",
    "discriminant",
    "normalize",
    "squarefree_factors",
    "square_free_basis",
]
