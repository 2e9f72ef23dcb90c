"""Reference deciders used for cross-checking the covering solver.

``cad_decide`` builds a full sign-invariant decomposition: project with all
discriminants, all coefficients and all pairwise resultants, then lift one
sample per cell and test the conjunction on every leaf.  It is slow by design
and limited to three variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence

from .covering import simplest_between
from .poly import Constraint, Polynomial, VariableOrder, discriminant, resultant, square_free_basis
from .realroots import RealAlgebraic, Sample, real_roots_with_check, sign_at

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown"

MAX_VARIABLES = 3


@dataclass
class OracleResult:
    verdict: str
    witness: Optional[Sample] = None
    cell_count: int = 0
    line_cells: int = 0
    reason: str = ""
    projection: Dict[int, List[Polynomial]] = field(default_factory=dict)


def _constant_verdict(constraints: Sequence[Constraint]) -> Optional[bool]:
    """False if some constant constraint fails; None otherwise."""
    for c in constraints:
        if c.poly.is_constant():
            v = c.poly.constant_value()
            if not c.holds((v > 0) - (v < 0)):
                return False
    return None


def _cells_of_line(roots: List[RealAlgebraic]) -> List[RealAlgebraic]:
    """One sample per sector and section of the line cut at the given sorted roots."""
    bounds = [None] + roots + [None]
    out = []
    for k in range(len(bounds) - 1):
        out.append(RealAlgebraic(simplest_between(bounds[k], bounds[k + 1])))
        if k < len(roots):
            out.append(roots[k])
    return out


def univariate_decide(constraints: Iterable[Constraint]) -> OracleResult:
    """Exact decision for constraints in (at most) one shared variable."""
    constraints = list(constraints)
    if _constant_verdict(constraints) is False:
        return OracleResult(UNSAT)
    live = [c for c in constraints if not c.poly.is_constant()]
    if not live:
        return OracleResult(SAT, witness=())
    variables = {v for c in live for v in c.poly.variables()}
    if len(variables) != 1:
        raise ValueError("univariate_decide needs constraints in a single variable")
    (v,) = variables
    roots, _ = real_roots_with_check([c.poly for c in live], ())
    cells = _cells_of_line(roots)
    n = len(live[0].poly.order)
    for r in cells:
        point = tuple(r if k == v else RealAlgebraic(0) for k in range(n))
        if all(c.holds(sign_at(c.poly, point)) for c in live):
            return OracleResult(SAT, witness=point, cell_count=len(cells), line_cells=len(cells))
    return OracleResult(UNSAT, cell_count=len(cells), line_cells=len(cells))


def project(polys: Iterable[Polynomial], n: int) -> Dict[int, List[Polynomial]]:
    """Projection factor sets per variable index, highest level first."""
    levels: Dict[int, List[Polynomial]] = {k: [] for k in range(n)}
    basis = square_free_basis(polys)
    for p in basis:
        levels[p.mvar()].append(p)
    for k in range(n - 1, 0, -1):
        new: List[Polynomial] = []
        level = levels[k]
        for p in level:
            if p.degree(k) >= 2:
                new.append(discriminant(p, k))
            new.extend(c for c in p.coeffs(k) if not c.is_zero())
        for p, q in combinations(level, 2):
            new.append(resultant(p, q, k))
        new = [p for p in new if not p.is_zero()]
        lower = [p for j in range(k) for p in levels[j]]
        merged = square_free_basis(lower + new)
        for j in range(k):
            levels[j] = [p for p in merged if p.mvar() == j]
    return levels


def cad_decide(constraints: Iterable[Constraint], order: Sequence[str]) -> OracleResult:
    """Full-CAD decision for a conjunction over at most three variables."""
    order = order if isinstance(order, VariableOrder) else VariableOrder(order)
    n = len(order)
    if n > MAX_VARIABLES:
        raise ValueError(f"the CAD oracle handles at most {MAX_VARIABLES} variables")
    constraints = list(constraints)
    if _constant_verdict(constraints) is False:
        return OracleResult(UNSAT)
    live = [c for c in constraints if not c.poly.is_constant()]
    if not live:
        return OracleResult(SAT, witness=tuple(RealAlgebraic(0) for _ in range(n)))
    levels = project((c.poly for c in live), n)
    result = OracleResult(UNSAT, projection=levels)

    def lift(s: Sample) -> Optional[Sample]:
        k = len(s)
        if k == n:
            result.cell_count += 1
            if all(c.holds(sign_at(c.poly, s)) for c in live):
                return s
            return None
        roots, nullified = real_roots_with_check(levels[k], s)
        if nullified:
            raise _Nullified(k)
        cells = _cells_of_line(roots)
        if k == 0:
            result.line_cells = len(cells)
        for r in cells:
            found = lift(s + (r,))
            if found is not None:
                return found
        return None

    try:
        witness = lift(())
    except _Nullified as exc:
        return OracleResult(UNKNOWN, reason=f"nullification while lifting variable {order[exc.args[0]]}",
                            cell_count=result.cell_count, line_cells=result.line_cells)
    if witness is not None:
        result.verdict = SAT
        result.witness = witness
    return result


class _Nullified(Exception):
    pass
