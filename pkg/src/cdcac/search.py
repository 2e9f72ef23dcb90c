"""A small DPLL layer over the atom abstraction of a formula.

Only atoms assigned true are sent to the theory solver.  Because formulas are
in negation normal form every atom occurs positively, so leaving an atom
false never makes the Boolean side harder to satisfy.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import Constraint, VariableOrder
from .realroots import RealAlgebraic, sign_at
from .smtlib import And, Atom, AtomTable, BoolConst, Formula, Or, atoms_of, evaluate, to_nnf
from .solver import SAT, UNKNOWN, UNSAT, SolveResult, solve
from .trace import Tracer

Clause = Tuple[int, ...]  # DIMACS-style literals


@dataclass
class SearchResult(SolveResult):
    theory_calls: int = 0
    learned: List[Tuple[Constraint, ...]] = field(default_factory=list)


class _CNF:
    def __init__(self):
        self.clauses: List[Clause] = []
        self.atom_var: Dict[object, int] = {}
        self.var_atom: Dict[int, Constraint] = {}
        self.nvars = 0

    def fresh(self) -> int:
        self.nvars += 1
        return self.nvars

    def literal(self, f: Formula) -> int:
        if isinstance(f, Atom):
            c = f.constraint
            if c.id not in self.atom_var:
                v = self.fresh()
                self.atom_var[c.id] = v
                self.var_atom[v] = c
            return self.atom_var[c.id]
        kids = [self.literal(a) for a in f.args]
        a = self.fresh()
        # one-sided definitions suffice since every subformula occurs positively
        if isinstance(f, And):
            self.clauses.extend((-a, k) for k in kids)
        else:
            self.clauses.append((-a, *kids))
        return a


def encode(f: Formula) -> _CNF:
    """Clausal form of an NNF formula without Boolean constants below the root."""
    cnf = _CNF()
    if isinstance(f, BoolConst):
        if not f.value:
            cnf.clauses.append(())
        return cnf
    cnf.clauses.append((cnf.literal(f),))
    return cnf


class _DPLL:
    """Chronological backtracking with unit propagation; decisions try false first."""

    def __init__(self, cnf: _CNF):
        self.cnf = cnf
        self.assign: Dict[int, bool] = {}
        self.trail: List[int] = []
        self.decisions: List[int] = []  # trail positions of unflipped decisions

    def _value(self, lit: int) -> Optional[bool]:
        v = self.assign.get(abs(lit))
        return None if v is None else (v if lit > 0 else not v)

    def _set(self, lit: int) -> None:
        self.assign[abs(lit)] = lit > 0
        self.trail.append(abs(lit))

    def _propagate(self) -> bool:
        changed = True
        while changed:
            changed = False
            for clause in self.cnf.clauses:
                free = None
                nfree = 0
                sat = False
                for lit in clause:
                    val = self._value(lit)
                    if val is True:
                        sat = True
                        break
                    if val is None:
                        nfree += 1
                        free = lit
                if sat:
                    continue
                if nfree == 0:
                    return False
                if nfree == 1:
                    self._set(free)
                    changed = True
        return True

    def _backtrack(self) -> bool:
        if not self.decisions:
            return False
        pos = self.decisions.pop()
        var = self.trail[pos]
        for v in self.trail[pos:]:
            del self.assign[v]
        del self.trail[pos:]
        self._set(var)
        return True

    def next_model(self) -> Optional[Dict[int, bool]]:
        while True:
            if not self._propagate():
                if not self._backtrack():
                    return None
                continue
            free = next((v for v in range(1, self.cnf.nvars + 1) if v not in self.assign), None)
            if free is None:
                return dict(self.assign)
            self.decisions.append(len(self.trail))
            self._set(-free)

    def add_clause(self, clause: Clause) -> None:
        self.cnf.clauses.append(clause)


def boolean_search(f: Formula, order: Sequence[str], *, strict: bool = False,
                   tracer: Optional[Tracer] = None, verify: bool = False,
                   timeout: Optional[float] = None, table: Optional[AtomTable] = None) -> SearchResult:
    """Decide a quantifier-free formula by enumerating atom assignments and calling the theory."""
    order = order if isinstance(order, VariableOrder) else VariableOrder(order)
    table = table if table is not None else AtomTable(atoms_of(f))
    tracer = tracer if tracer is not None else Tracer()
    nnf = to_nnf(f, table)
    cnf = encode(nnf)
    sat = _DPLL(cnf)
    deadline = None if timeout is None else time.monotonic() + timeout
    result = SearchResult(UNSAT)
    core = set()
    saw_unknown = False
    while True:
        model = sat.next_model()
        if model is None:
            break
        true_atoms = [cnf.var_atom[v] for v in sorted(cnf.var_atom) if model[v]]
        remaining = None
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                result.diagnostics.append("timeout")
                saw_unknown = True
                break
        res = solve(true_atoms, order, strict=strict, tracer=tracer, verify=verify, timeout=remaining)
        result.theory_calls += 1
        result.diagnostics.extend(d for d in res.diagnostics if d not in result.diagnostics)
        if res.verdict == SAT:
            result.verdict = SAT
            result.witness = res.witness
            result.cover = res.cover
            break
        if res.verdict == UNSAT:
            subset = [c for c in true_atoms if c.id in res.infeasible_subset] or true_atoms
            core.update(c.id for c in subset)
            result.learned.append(tuple(subset))
            result.cover = res.cover
        else:
            saw_unknown = True
            if "timeout" in res.diagnostics:
                break
            subset = true_atoms
        if not subset:
            break
        sat.add_clause(tuple(-cnf.atom_var[c.id] for c in subset))
    if result.verdict != SAT:
        result.verdict = UNKNOWN if saw_unknown else UNSAT
        result.infeasible_subset = frozenset(core) if result.verdict == UNSAT else frozenset()
    result.stats = tracer.stats()
    result.stats["theory_calls"] = result.theory_calls
    return result


def check_model(f: Formula, order: Sequence[str], model: Dict[str, RealAlgebraic]) -> bool:
    """Exact re-evaluation of the formula at a model."""
    point = tuple(model.get(v, RealAlgebraic(0)) for v in order)
    signs = {c.id: sign_at(c.poly, point) for c in atoms_of(f)}
    return evaluate(f, signs)
