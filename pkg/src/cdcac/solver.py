"""Satisfiability of a conjunction of polynomial constraints via cylindrical algebraic coverings.

The search assigns variables lowest first.  At every level it collects
intervals of the current variable on which some constraint is false and
samples outside them.  When a sample cannot be extended, the covering found
one level up is turned into a set of polynomials (the characterization)
whose sign-invariance keeps that covering valid, and the sample is widened
into an interval delimited by the nearest roots of those polynomials.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from .covering import (
    CoveringInterval,
    cmp_lower,
    cmp_upper,
    compute_cover,
    covers_reals,
    interval_inside,
    sample_outside,
    simplest_between,
)
from .poly import (
    Constraint,
    ContractViolation,
    Polynomial,
    VariableOrder,
    discriminant,
    normalize,
    resultant,
    square_free_basis,
)
from .realroots import (
    RealAlgebraic,
    Sample,
    SpecializedPolynomial,
    compare,
    is_zero_at,
    real_roots_with_check,
    sign_at,
)
from .trace import Tracer, interval_record, ran_text

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"

Sampler = Callable[[List[CoveringInterval], int], Optional[RealAlgebraic]]




class Timeout(Exception):
    pass


@dataclass
class SolveResult:
    verdict: str
    witness: Optional[Dict[str, RealAlgebraic]] = None
    infeasible_subset: FrozenSet = frozenset()
    diagnostics: List[str] = field(default_factory=list)
    stats: Dict = field(default_factory=dict)
    cover: List[CoveringInterval] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.verdict == SAT


@dataclass
class CoverOutcome:
    flag: str
    witness: Optional[Sample] = None
    cover: List[CoveringInterval] = field(default_factory=list)


class ScriptedSampler:
    """Replays chosen sample values per dimension, then falls back to the default rule.

    ``script`` maps a 1-based dimension to a list whose items are numbers,
    :class:`RealAlgebraic` values or callables taking the current intervals.
    Each scripted value must lie outside the current intervals.
    """

    def __init__(self, script: Dict[int, Sequence]):
        self.script = {d: list(vals) for d, vals in script.items()}

    def __call__(self, intervals: List[CoveringInterval], dim: int) -> Optional[RealAlgebraic]:
        queue = self.script.get(dim)
        if queue and covers_reals(intervals):
            return None
        if not queue:
            return sample_outside(intervals)
        item = queue.pop(0)
        if callable(item):
            value = item(intervals)
        elif isinstance(item, RealAlgebraic):
            value = item
        else:
            value = RealAlgebraic(Fraction(item))
        if value is None or any(I.contains(value) for I in intervals):
            raise ValueError(f"scripted sample {value} at dimension {dim} is covered")
        return value


def default_sampler(intervals: List[CoveringInterval], dim: int) -> Optional[RealAlgebraic]:
    return sample_outside(intervals)


class CoveringSolver:
    """One satisfiability check.  Create a fresh instance per query."""

    def __init__(self, constraints: Iterable[Constraint], order: Sequence[str], *,
                 strict: bool = False, tracer: Optional[Tracer] = None,
                 sampler: Optional[Sampler] = None, verify: bool = False,
                 deadline: Optional[float] = None):
        self.order = order if isinstance(order, VariableOrder) else VariableOrder(order)
        self.n = len(self.order)
        self.constraints = list(constraints)
        for c in self.constraints:
            if c.poly.order != self.order:
                raise ContractViolation(f"constraint {c.id} uses a different variable order")
        self.strict = strict
        self.tracer = tracer if tracer is not None else Tracer()
        self.sampler = sampler or default_sampler
        self.verify = verify
        self.deadline = deadline
        self.diagnostics: List[str] = []
        self.incomplete: Optional[str] = None  # set in strict mode once a derivation used a nullified step
        self._res_cache: Dict[Tuple, Polynomial] = {}
        self._disc_cache: Dict[Tuple, Polynomial] = {}
        self.by_level: Dict[int, List[Constraint]] = {}
        for c in self.constraints:
            self.by_level.setdefault(c.poly.mvar(), []).append(c)
        self.tracer.note_degree(c.poly for c in self.constraints)

    # ------------------------------------------------------------------
    # entry point

    def solve(self) -> SolveResult:
        constant_false = [c for c in self.constraints
                          if c.poly.is_constant() and not c.holds(_const_sign(c.poly))]
        if constant_false:
            return self._result(UNSAT, subset=frozenset([constant_false[0].id]))
        if self.n == 0 or all(c.poly.is_constant() for c in self.constraints):
            return self._result(SAT, witness=tuple(RealAlgebraic(0) for _ in range(self.n)))
        try:
            outcome = self.get_unsat_cover(())
        except Timeout:
            self.diagnostics.append("timeout")
            return self._result(UNKNOWN)
        if outcome.flag == SAT:
            self._check_witness(outcome.witness)
            return self._result(SAT, witness=outcome.witness)
        if self.incomplete is not None:
            # a refutation leaned on a nullified projection: it may be unsound
            self.diagnostics.append(f"incomplete: {self.incomplete}")
            return self._result(UNKNOWN)
        cover = compute_cover(outcome.cover)
        subset = frozenset().union(*(I.origins for I in cover))
        return self._result(UNSAT, subset=subset, cover=cover)

    def _result(self, verdict: str, witness: Optional[Sample] = None,
                subset: FrozenSet = frozenset(), cover=()) -> SolveResult:
        named = None
        if witness is not None:
            named = {v: witness[k] for k, v in enumerate(self.order)}
        return SolveResult(verdict, named, subset, list(self.diagnostics),
                           self.tracer.stats(), list(cover))

    def _check_witness(self, witness: Sample) -> None:
        for c in self.constraints:
            if not c.holds(sign_at(c.poly, witness)):
                raise AssertionError(f"witness violates constraint {c.id}: {c}")

    def _tick(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Timeout()

    def _sample_text(self, s: Sample) -> List[str]:
        return [ran_text(r, self.order[k]) for k, r in enumerate(s)]

    # ------------------------------------------------------------------
    # main recursion

    def get_unsat_cover(self, s: Sample) -> CoverOutcome:
        i = len(s)
        dim = i + 1
        tr = self.tracer
        intervals = self.get_unsat_intervals(s)
        if tr.active:
            tr.emit("unsat_intervals", dim, sample=self._sample_text(s),
                    intervals=[interval_record(I, self.order[i]) for I in intervals])
        else:
            tr.emit("unsat_intervals", dim)
        while True:
            self._tick()
            si = self.sampler(intervals, dim)
            if si is None:
                break
            t = s + (si,)
            if tr.active:
                tr.emit("sample", dim, sample=self._sample_text(t))
            else:
                tr.emit("sample", dim)
            if dim == self.n:
                return CoverOutcome(SAT, witness=t)
            tr.emit("recursion_enter", dim + 1, **({"sample": self._sample_text(t)} if tr.active else {}))
            sub = self.get_unsat_cover(t)
            tr.emit("recursion_exit", dim + 1, result=sub.flag)
            if sub.flag == SAT:
                return sub
            chars, origins = self.construct_characterization(t, sub.cover)
            new = self.interval_from_characterization(s, si, chars, origins)
            intervals.append(new)
            tr.intervals_created += 1
            if tr.active:
                tr.emit("interval", dim, sample=self._sample_text(s),
                        interval=interval_record(new, self.order[i]))
            else:
                tr.emit("interval", dim)
        if tr.active:
            tr.emit("cover_complete", dim, sample=self._sample_text(s),
                    cover=[interval_record(I, self.order[i]) for I in compute_cover(intervals)])
        else:
            tr.emit("cover_complete", dim)
        if self.verify:
            self._verify_cover(s, intervals)
        return CoverOutcome(UNSAT, cover=intervals)

    # ------------------------------------------------------------------
    # intervals where single constraints fail

    def _split_basis(self, polys: Iterable[Polynomial], i: int):
        basis = square_free_basis(polys)
        main = [p for p in basis if p.mvar() == i]
        bot = [p for p in basis if p.mvar() < i]
        return main, bot

    def get_unsat_intervals(self, s: Sample) -> List[CoveringInterval]:
        i = len(s)
        out: List[CoveringInterval] = []
        for c in self.by_level.get(i, []):
            sp = SpecializedPolynomial(c.poly, s)
            main, bot = self._split_basis([c.poly], i)
            if sp.is_constant():
                if sp.is_zero():
                    self._report_nullification(i + 1, s, [c.poly], "constraint vanishes identically")
                if not c.holds(sp.sign()):
                    full = CoveringInterval(None, None, (), (), main, bot, {c.id})
                    self.tracer.intervals_created += 1
                    return [full]
                continue
            roots = sp.roots()
            bounds: List[Optional[RealAlgebraic]] = [None] + roots + [None]
            for k in range(len(bounds) - 1):
                a, b = bounds[k], bounds[k + 1]
                r = RealAlgebraic(simplest_between(a, b))
                if not c.holds(sign_at(c.poly, s + (r,))):
                    out.append(self._make_interval(s, a, b, main, bot, {c.id}))
                if k < len(roots) and not c.holds(0):
                    out.append(self._make_interval(s, roots[k], roots[k], main, bot, {c.id}))
        self.tracer.intervals_created += len(out)
        return out

    def _vanishing(self, polys: Sequence[Polynomial], s: Sample, r: Optional[RealAlgebraic]) -> List[Polynomial]:
        if r is None:
            return []
        t = s + (r,)
        return [p for p in polys if is_zero_at(p, t)]

    def _make_interval(self, s: Sample, lo, hi, main, bot, origins) -> CoveringInterval:
        L = self._vanishing(main, s, lo)
        U = L if (lo is not None and hi is not None and lo is hi) else self._vanishing(main, s, hi)
        return CoveringInterval(lo, hi, L, U, main, bot, origins)

    # ------------------------------------------------------------------
    # projection helpers with caching and instrumentation

    def _resultant(self, p: Polynomial, q: Polynomial, v: int) -> Polynomial:
        key = (v,) + tuple(sorted((p, q), key=Polynomial.sort_key))
        hit = self._res_cache.get(key)
        if hit is None:
            hit = resultant(key[1], key[2], v)
            self._res_cache[key] = hit
            if self.tracer.active:
                self.tracer.emit("resultant", v + 1, polys=[str(key[1]), str(key[2])])
            else:
                self.tracer.emit("resultant", v + 1)
        return hit

    def _discriminant(self, p: Polynomial, v: int) -> Polynomial:
        key = (v, p)
        hit = self._disc_cache.get(key)
        if hit is None:
            hit = discriminant(p, v)
            self._disc_cache[key] = hit
            if self.tracer.active:
                self.tracer.emit("discriminant", v + 1, polys=[str(p)])
            else:
                self.tracer.emit("discriminant", v + 1)
        return hit

    def _report_nullification(self, dim: int, s: Sample, polys, why: str) -> None:
        names = ", ".join(str(p) for p in polys)
        self.diagnostics.append(f"nullification at dimension {dim}: {names} ({why})")
        if self.tracer.active:
            self.tracer.emit("nullification", dim, sample=self._sample_text(s),
                             polys=[str(p) for p in polys], reason=why)
        else:
            self.tracer.emit("nullification", dim)

    def _taint(self, why: str) -> None:
        if self.strict and self.incomplete is None:
            self.incomplete = why

    def required_coefficients(self, s: Sample, p: Polynomial) -> List[Polynomial]:
        """Leading coefficients of p in x_{len(s)} from the top until one is non-zero at s."""
        v = len(s)
        out = []
        for c in reversed(p.coeffs(v)):
            if c.is_zero():
                continue
            out.append(c)
            if not is_zero_at(c, s):
                return out
        self._report_nullification(v + 1, s, [p], "all coefficients vanish")
        self._taint(f"{p} nullified over the sample")
        return out

    # ------------------------------------------------------------------
    # characterization and generalization

    def construct_characterization(self, t: Sample, intervals: List[CoveringInterval]):
        """Polynomials in lower variables whose sign-invariance keeps the covering valid.

        ``t`` is the sample whose extension was refuted; the covering lives in
        variable ``x_{len(t)+1}``.  Returns the characterization and the union
        of origins over the selected covering.
        """
        self._tick()
        v = len(t)
        cover = compute_cover(intervals)
        origins: Set = set()
        projected: List[Polynomial] = []
        for I in cover:
            origins |= I.origins
            projected.extend(I.P_bot)
            for p in I.P_main:
                if p.degree(v) >= 2:
                    projected.append(self._discriminant(p, v))
                projected.extend(self.required_coefficients(t, p))
            for p in I.L:
                for q in I.P_main:
                    if q != p and self._has_root(q, t, I.lower, below=True):
                        projected.append(self._resultant(p, q, v))
            for p in I.U:
                for q in I.P_main:
                    if q != p and self._has_root(q, t, I.upper, below=False):
                        projected.append(self._resultant(p, q, v))
        for a, b in zip(cover, cover[1:]):
            for p in a.U:
                for q in b.L:
                    if p != q:
                        projected.append(self._resultant(p, q, v))
        kept = []
        for p in projected:
            if p.is_zero():
                self._report_nullification(v, t, [p], "projection polynomial is zero")
                self._taint("zero projection polynomial")
                continue
            if normalize(p) is not None:
                kept.append(p)
        chars = square_free_basis(kept)
        self.tracer.note_degree(chars)
        if self.tracer.active:
            self.tracer.emit("characterization", v, sample=self._sample_text(t),
                             polys=[str(p) for p in chars], origins=sorted(str(o) for o in origins))
        else:
            self.tracer.emit("characterization", v)
        return chars, frozenset(origins)

    def _has_root(self, q: Polynomial, t: Sample, bound: RealAlgebraic, below: bool) -> bool:
        sp = SpecializedPolynomial(q, t)
        if sp.is_zero():
            return True
        for r in sp.roots():
            c = compare(r, bound)
            if (c <= 0) if below else (c >= 0):
                return True
        return False

    def interval_from_characterization(self, s: Sample, si: RealAlgebraic,
                                       chars: Sequence[Polynomial], origins) -> CoveringInterval:
        i = len(s)
        main = [p for p in chars if p.mvar() == i]
        bot = [p for p in chars if p.mvar() < i]
        roots, nullified = real_roots_with_check(main, s)
        if nullified:
            self._report_nullification(i + 1, s, sorted(nullified, key=Polynomial.sort_key),
                                       "characterization polynomial vanishes over the sample")
            self._taint("characterization polynomial nullified")
        lo: Optional[RealAlgebraic] = None
        hi: Optional[RealAlgebraic] = None
        for r in roots:
            c = compare(r, si)
            if c <= 0:
                lo = r
            if c >= 0:
                hi = r
                break
        if lo is not None and hi is not None and compare(lo, hi) == 0:
            hi = lo
        return self._make_interval(s, lo, hi, main, bot, origins)

    # ------------------------------------------------------------------
    # verification

    def _verify_cover(self, s: Sample, intervals: List[CoveringInterval]) -> None:
        if not covers_reals(intervals):
            raise AssertionError("covering does not cover the real line")
        cover = compute_cover(intervals)
        check_cover_order(cover)
        for I in cover:
            if not I.origins:
                raise AssertionError("interval without origins")
            if I.is_point():
                r = I.lower
            else:
                r = RealAlgebraic(simplest_between(I.lower, I.upper))
            if not self._refutes(s + (r,), I.origins):
                raise AssertionError(f"interval {I} at sample {self._sample_text(s)} is not refuted by its origins")

    def _refutes(self, t: Sample, origins) -> bool:
        subset = [c for c in self.constraints if c.id in origins]
        k = len(t)
        for c in subset:
            if c.poly.mvar() < k and not c.holds(sign_at(c.poly, t)):
                return True
        if k == self.n:
            return False
        sub = CoveringSolver(subset, self.order, strict=self.strict)
        return sub.get_unsat_cover(t).flag == UNSAT


def check_cover_order(cover: Sequence[CoveringInterval]) -> None:
    """Raise unless the selected covering is ordered and free of first-kind redundancy."""
    if not cover or cover[0].lower is not None or cover[-1].upper is not None:
        raise AssertionError("covering must start at -oo and end at +oo")
    for a, b in zip(cover, cover[1:]):
        dl, du = cmp_lower(a.lower, b.lower), cmp_upper(a.upper, b.upper)
        if dl > 0 or (dl == 0 and du > 0):
            raise AssertionError("lower bounds out of order")
        if du > 0:
            raise AssertionError("upper bounds out of order")
        # consecutive intervals overlap, or share an endpoint that one of them contains
        if a.upper is None or b.lower is None:
            continue
        c = compare(b.lower, a.upper)
        if c > 0 or (c == 0 and not (a.is_point() or b.is_point())):
            raise AssertionError("gap between consecutive intervals")
    for x in cover:
        for y in cover:
            if x is not y and interval_inside(x, y):
                raise AssertionError(f"interval {x} lies inside {y}")


def _const_sign(p: Polynomial) -> int:
    c = p.constant_value()
    return (c > 0) - (c < 0)


def solve(constraints: Iterable[Constraint], order: Sequence[str], *, strict: bool = False,
          tracer: Optional[Tracer] = None, sampler: Optional[Sampler] = None,
          verify: bool = False, timeout: Optional[float] = None) -> SolveResult:
    deadline = None if timeout is None else time.monotonic() + timeout
    return CoveringSolver(constraints, order, strict=strict, tracer=tracer, sampler=sampler,
                          verify=verify, deadline=deadline).solve()
