"""Covering intervals over one dimension and the operations on sets of them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .poly import Polynomial
from .realroots import RealAlgebraic, compare, sort_unique

Bound = Optional[RealAlgebraic]  # None is -inf as a lower bound and +inf as an upper bound


def canonical_polys(polys: Iterable[Polynomial]) -> Tuple[Polynomial, ...]:
    return tuple(sorted(set(polys), key=Polynomial.sort_key))


@dataclass
class CoveringInterval:
    """An open or point interval in the current dimension plus its bookkeeping.

    ``L`` and ``U`` vanish at the finite bounds, ``P_main`` holds the
    polynomials in the current variable that define the interval and
    ``P_bot`` those in lower variables.  ``origins`` are the ids of the
    constraints the interval was derived from.
    """

    lower: Bound
    upper: Bound
    L: Tuple[Polynomial, ...] = ()
    U: Tuple[Polynomial, ...] = ()
    P_main: Tuple[Polynomial, ...] = ()
    P_bot: Tuple[Polynomial, ...] = ()
    origins: FrozenSet = field(default_factory=frozenset)

    def __post_init__(self):
        self.L = canonical_polys(self.L)
        self.U = canonical_polys(self.U)
        self.P_main = canonical_polys(self.P_main)
        self.P_bot = canonical_polys(self.P_bot)
        self.origins = frozenset(self.origins)
        if self.lower is not None and self.upper is not None:
            c = compare(self.lower, self.upper)
            if c > 0:
                raise ValueError("interval lower bound exceeds upper bound")

    def is_point(self) -> bool:
        return (self.lower is not None and self.upper is not None
                and compare(self.lower, self.upper) == 0)

    def contains(self, r: RealAlgebraic) -> bool:
        if self.is_point():
            return compare(r, self.lower) == 0
        return lower_lt(self.lower, r) and upper_gt(self.upper, r)

    def bounds_text(self) -> str:
        lo = "-oo" if self.lower is None else _fmt(self.lower)
        hi = "oo" if self.upper is None else _fmt(self.upper)
        if self.is_point():
            return f"[{lo}, {lo}]"
        return f"({lo}, {hi})"

    def __str__(self) -> str:
        return self.bounds_text()


def _fmt(r: RealAlgebraic) -> str:
    if r.is_rational():
        return str(r.value)
    return f"{float(r):.6g}"


def lower_lt(lower: Bound, r: RealAlgebraic) -> bool:
    return lower is None or compare(lower, r) < 0


def upper_gt(upper: Bound, r: RealAlgebraic) -> bool:
    return upper is None or compare(upper, r) > 0


def cmp_lower(a: Bound, b: Bound) -> int:
    if a is None or b is None:
        return (a is not None) - (b is not None)
    return compare(a, b)


def cmp_upper(a: Bound, b: Bound) -> int:
    if a is None or b is None:
        return (a is None) - (b is None)
    return compare(a, b)


def endpoints(intervals: Sequence[CoveringInterval]) -> List[RealAlgebraic]:
    pts = []
    for I in intervals:
        if I.lower is not None:
            pts.append(I.lower)
        if I.upper is not None:
            pts.append(I.upper)
    return sort_unique(pts)


def _piece_covered(intervals: Sequence[CoveringInterval], a: Bound, b: Bound) -> bool:
    """Is the open piece (a, b) inside one interval? (pieces never contain endpoints)."""
    for I in intervals:
        if I.is_point():
            continue
        if cmp_lower(I.lower, a) <= 0 and cmp_upper(I.upper, b) >= 0:
            return True
    return False


def _point_covered(intervals: Sequence[CoveringInterval], e: RealAlgebraic) -> bool:
    return any(I.contains(e) for I in intervals)


def uncovered_pieces(intervals: Sequence[CoveringInterval]):
    """Elementary pieces not covered: ('open', a, b) with None for infinities, or ('point', e)."""
    pts = endpoints(intervals)
    bounds: List[Bound] = [None] + list(pts) + [None]
    out = []
    for k in range(len(bounds) - 1):
        a, b = bounds[k], bounds[k + 1]
        if not _piece_covered(intervals, a, b):
            out.append(("open", a, b))
        if k < len(pts) and not _point_covered(intervals, pts[k]):
            out.append(("point", pts[k]))
    return out


def covers_reals(intervals: Sequence[CoveringInterval]) -> bool:
    if not intervals:
        return False
    return not uncovered_pieces(intervals)


def compute_cover(intervals: Sequence[CoveringInterval]) -> List[CoveringInterval]:
    """Greedy left-to-right selection of a good sub-covering.

    The result is ordered by lower and by upper bound simultaneously and
    no selected interval lies inside a single other selected one.
    """
    intervals = list(intervals)
    if not covers_reals(intervals):
        raise ValueError("compute_cover requires a set covering the real line")

    def best(cands: List[CoveringInterval]) -> CoveringInterval:
        top = cands[0]
        for c in cands[1:]:
            d = cmp_upper(c.upper, top.upper)
            if d > 0 or (d == 0 and cmp_lower(c.lower, top.lower) < 0):
                top = c
        return top

    first = best([I for I in intervals if I.lower is None])
    chosen = [first]
    frontier = first.upper
    covered = False
    while frontier is not None:
        if not covered:
            cands = [I for I in intervals
                     if not I.is_point() and lower_lt(I.lower, frontier) and upper_gt(I.upper, frontier)]
            if cands:
                nxt = best(cands)
            else:
                pts = [I for I in intervals if I.is_point() and compare(I.lower, frontier) == 0]
                if not pts:
                    raise AssertionError("gap in a set that covers the real line")
                chosen.append(pts[0])
                covered = True
                continue
        else:
            cands = [I for I in intervals
                     if not I.is_point() and cmp_lower(I.lower, frontier) <= 0 and upper_gt(I.upper, frontier)]
            nxt = best(cands)
        chosen.append(nxt)
        frontier = nxt.upper
        covered = False
    tightened = _tighten_chain(intervals, chosen)
    return tightened if _is_good_chain(tightened) else chosen


def _links(a: Optional[CoveringInterval], b: Optional[CoveringInterval]) -> bool:
    """Do a and b (a before b) leave no gap between them?"""
    if a is None:
        return b.lower is None
    if b is None:
        return a.upper is None
    if a.upper is None or b.lower is None:
        return True
    c = compare(b.lower, a.upper)
    return c < 0 or (c == 0 and (a.is_point() or b.is_point()))


def _tighten_chain(intervals: Sequence[CoveringInterval], chain: List[CoveringInterval]) -> List[CoveringInterval]:
    # walk backwards replacing each open interval by one ending earliest that still links
    out = list(chain)
    for j in range(len(out) - 1, -1, -1):
        if out[j].is_point():
            continue
        prev = out[j - 1] if j > 0 else None
        nxt = out[j + 1] if j + 1 < len(out) else None
        best = out[j]
        for X in intervals:
            if X.is_point() or not (_links(prev, X) and _links(X, nxt)):
                continue
            if cmp_upper(X.upper, best.upper) < 0:
                best = X
        out[j] = best
    return out


def _is_good_chain(chain: Sequence[CoveringInterval]) -> bool:
    for a, b in zip(chain, chain[1:]):
        if cmp_lower(a.lower, b.lower) > 0 or cmp_upper(a.upper, b.upper) > 0:
            return False
        if (cmp_lower(a.lower, b.lower) == 0 and cmp_upper(a.upper, b.upper) == 0):
            return False
    for x in chain:
        for y in chain:
            if x is not y and interval_inside(x, y):
                return False
    return True


def interval_inside(x: CoveringInterval, y: CoveringInterval) -> bool:
    """Is x a subset of y?"""
    if y.is_point():
        return x.is_point() and compare(x.lower, y.lower) == 0
    if x.is_point():
        return y.contains(x.lower)
    return cmp_lower(y.lower, x.lower) <= 0 and cmp_upper(y.upper, x.upper) >= 0


# ---------------------------------------------------------------------------
# sampling


def _abs_key(r: RealAlgebraic):
    return r if r.sign() >= 0 else -r


def _better_abs(a: RealAlgebraic, b: RealAlgebraic) -> bool:
    """Is a preferred over b: smaller absolute value, ties to the positive one."""
    c = compare(_abs_key(a), _abs_key(b))
    if c:
        return c < 0
    return a.sign() > b.sign()


def _ceil_strict(a: Bound) -> Optional[int]:
    """Smallest integer strictly above a."""
    if a is None:
        return None
    if a.is_rational():
        v = a.value
        return v.numerator // v.denominator + 1
    while int(a.lo // 1) != int(a.hi // 1) and not a.is_rational():
        a.refine()
    if a.is_rational():
        return _ceil_strict(a)
    return int(a.lo // 1) + 1


def _floor_strict(a: Bound) -> Optional[int]:
    """Largest integer strictly below a."""
    if a is None:
        return None
    return -_ceil_strict(-a)


def _integer_in(a: Bound, b: Bound) -> Optional[int]:
    """Integer of smallest absolute value in the open interval (a, b), ties positive."""
    lo = _ceil_strict(a)
    hi = _floor_strict(b)
    if lo is not None and hi is not None and lo > hi:
        return None
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return 0
    if lo is not None and lo > 0:
        return lo
    return hi


def _max_steps(pred: Callable[[int], bool]) -> int:
    """Largest k >= 1 with pred(k), given pred(1) and pred monotone decreasing."""
    hi = 2
    while pred(hi):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def simplest_between(a: Bound, b: Bound) -> Fraction:
    """Rational with the smallest denominator in the open interval (a, b)."""
    if (a is None or a.sign() < 0) and (b is None or b.sign() > 0):
        return Fraction(0)
    if b is not None and b.sign() <= 0:
        return -simplest_between(-b, None if a is None else -a)
    # Stern-Brocot descent with batched runs, 0 <= a
    ln, ld, hn, hd = 0, 1, 1, 0
    while True:
        m = Fraction(ln + hn, ld + hd)
        if m <= a:
            k = _max_steps(lambda k: Fraction(ln + k * hn, ld + k * hd) <= a)
            ln, ld = ln + k * hn, ld + k * hd
        elif b is not None and m >= b:
            k = _max_steps(lambda k: Fraction(hn + k * ln, hd + k * ld) >= b)
            hn, hd = hn + k * ln, hd + k * ld
        else:
            return m


def sample_outside(intervals: Sequence[CoveringInterval]) -> Optional[RealAlgebraic]:
    """A deterministic point not covered by any interval, or None if none exists."""
    pieces = uncovered_pieces(intervals) if intervals else [("open", None, None)]
    if not pieces:
        return None
    best_int: Optional[int] = None
    for piece in pieces:
        if piece[0] != "open":
            continue
        k = _integer_in(piece[1], piece[2])
        if k is not None and (best_int is None or (abs(k), -k) < (abs(best_int), -best_int)):
            best_int = k
    if best_int is not None:
        return RealAlgebraic(best_int)
    best_pt: Optional[RealAlgebraic] = None
    for piece in pieces:
        if piece[0] == "point" and (best_pt is None or _better_abs(piece[1], best_pt)):
            best_pt = piece[1]
    if best_pt is not None:
        return best_pt
    best_q: Optional[Fraction] = None
    for piece in pieces:
        q = simplest_between(piece[1], piece[2])
        if best_q is None or (q.denominator, abs(q), -q) < (best_q.denominator, abs(best_q), -best_q):
            best_q = q
    return RealAlgebraic(best_q)
