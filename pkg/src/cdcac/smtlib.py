"""Reading and writing the QF_NRA fragment of SMT-LIB 2."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import upoly
from .poly import Constraint, NEGATED, Polynomial, VariableOrder
from .realroots import RealAlgebraic


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{line}:{col}: {message}" if line else message)
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Atom:
    constraint: Constraint


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: Tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    args: Tuple["Formula", ...]


Formula = Union[BoolConst, Atom, Not, And, Or]

TRUE = BoolConst(True)
FALSE = BoolConst(False)


class AtomTable:
    """Interns constraints so that equal (polynomial, relation) pairs share one id."""

    def __init__(self, seed: Sequence[Constraint] = ()):
        self.by_key: Dict[Tuple[Polynomial, str], Constraint] = {}
        self._ids = set()
        for c in seed:
            self.by_key.setdefault((c.poly, c.relation), c)
            self._ids.add(c.id)

    def atom(self, poly: Polynomial, relation: str) -> Formula:
        if poly.is_constant():
            v = poly.constant_value()
            c = Constraint(poly, relation, None)
            return TRUE if c.holds((v > 0) - (v < 0)) else FALSE
        key = (poly, relation)
        c = self.by_key.get(key)
        if c is None:
            k = len(self.by_key)
            while f"a{k}" in self._ids:
                k += 1
            c = Constraint(poly, relation, f"a{k}")
            self.by_key[key] = c
            self._ids.add(c.id)
        return Atom(c)

    def negate(self, c: Constraint) -> Formula:
        return self.atom(c.poly, NEGATED[c.relation])

    def constraints(self) -> List[Constraint]:
        return list(self.by_key.values())


def to_nnf(f: Formula, table: AtomTable, negate: bool = False) -> Formula:
    """Negation normal form with negations folded into the relations; nested and/or flattened."""
    if isinstance(f, BoolConst):
        return BoolConst(f.value != negate)
    if isinstance(f, Atom):
        return table.negate(f.constraint) if negate else f
    if isinstance(f, Not):
        return to_nnf(f.arg, table, not negate)
    conj = isinstance(f, And) != negate
    parts: List[Formula] = []
    for a in f.args:
        g = to_nnf(a, table, negate)
        if isinstance(g, BoolConst):
            if g.value != conj:
                return BoolConst(not conj)
            continue
        if isinstance(g, And if conj else Or):
            parts.extend(g.args)
        else:
            parts.append(g)
    if not parts:
        return BoolConst(conj)
    if len(parts) == 1:
        return parts[0]
    return And(tuple(parts)) if conj else Or(tuple(parts))


def atoms_of(f: Formula) -> List[Constraint]:
    out: Dict[object, Constraint] = {}

    def walk(g):
        if isinstance(g, Atom):
            out.setdefault(g.constraint.id, g.constraint)
        elif isinstance(g, Not):
            walk(g.arg)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)

    walk(f)
    return list(out.values())


def evaluate(f: Formula, signs: Dict[object, int]) -> bool:
    """Truth value given the sign of every atom's polynomial (keyed by constraint id)."""
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, Atom):
        return f.constraint.holds(signs[f.constraint.id])
    if isinstance(f, Not):
        return not evaluate(f.arg, signs)
    if isinstance(f, And):
        return all(evaluate(a, signs) for a in f.args)
    return any(evaluate(a, signs) for a in f.args)


# ---------------------------------------------------------------------------
# tokens and s-expressions


@dataclass
class Token:
    kind: str  # "(" ")" "symbol" "numeral" "decimal" "string" "keyword"
    text: str
    line: int
    col: int


@dataclass
class SList:
    items: List["SExpr"]
    line: int
    col: int


SExpr = Union[Token, SList]


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def advance(k: int):
        nonlocal i, line, col
        for ch in text[i:i + k]:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
        i += k

    while i < n:
        ch = text[i]
        if ch.isspace():
            advance(1)
        elif ch == ";":
            j = text.find("\n", i)
            advance((n if j < 0 else j) - i)
        elif ch in "()":
            out.append(Token(ch, ch, line, col))
            advance(1)
        elif ch == '"':
            j = i + 1
            while j < n:
                if text[j] == '"':
                    if j + 1 < n and text[j + 1] == '"':
                        j += 2
                        continue
                    break
                j += 1
            if j >= n:
                raise ParseError("unterminated string literal", line, col)
            out.append(Token("string", text[i + 1:j], line, col))
            advance(j + 1 - i)
        elif ch == "|":
            j = text.find("|", i + 1)
            if j < 0:
                raise ParseError("unterminated quoted symbol", line, col)
            out.append(Token("symbol", text[i + 1:j], line, col))
            advance(j + 1 - i)
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();"|':
                j += 1
            word = text[i:j]
            if word[0].isdigit():
                if all(c.isdigit() for c in word):
                    kind = "numeral"
                elif word.count(".") == 1 and all(c.isdigit() for c in word.replace(".", "")) \
                        and not word.endswith("."):
                    kind = "decimal"
                else:
                    raise ParseError(f"malformed numeric literal {word!r}", line, col)
            elif word[0] == ":":
                kind = "keyword"
            elif word[0] == "#":
                raise ParseError(f"literal {word!r} unsupported", line, col)
            else:
                kind = "symbol"
            out.append(Token(kind, word, line, col))
            advance(j - i)
    return out


def read_sexprs(text: str) -> List[SExpr]:
    tokens = tokenize(text)
    stack: List[SList] = []
    top: List[SExpr] = []
    for tok in tokens:
        if tok.kind == "(":
            stack.append(SList([], tok.line, tok.col))
        elif tok.kind == ")":
            if not stack:
                raise ParseError("unexpected ')'", tok.line, tok.col)
            done = stack.pop()
            (stack[-1].items if stack else top).append(done)
        else:
            (stack[-1].items if stack else top).append(tok)
    if stack:
        raise ParseError("unbalanced parentheses: missing ')'", stack[-1].line, stack[-1].col)
    return top


def _pos(e: SExpr) -> Tuple[int, int]:
    return e.line, e.col


def _head(e: SExpr) -> Optional[str]:
    if isinstance(e, SList) and e.items and isinstance(e.items[0], Token) and e.items[0].kind == "symbol":
        return e.items[0].text
    return None


# ---------------------------------------------------------------------------
# scripts


@dataclass
class Script:
    """The parsed commands.  ``checks`` holds, per check-sat, the asserted formula so far."""

    order: VariableOrder
    assertions: List[Formula]
    commands: List[Tuple[str, Optional[int]]]
    table: AtomTable
    info: Dict[str, str] = field(default_factory=dict)

    def formula(self, upto: Optional[int] = None) -> Formula:
        parts = self.assertions if upto is None else self.assertions[:upto]
        if not parts:
            return TRUE
        if len(parts) == 1:
            return parts[0]
        return And(tuple(parts))


_RELATIONS = {"<": "<", "<=": "<=", ">": ">", ">=": ">=", "=": "="}
_UNSUPPORTED_COMMANDS = {
    "push", "pop", "check-sat-assuming", "get-value", "get-assertions", "get-unsat-core",
    "get-proof", "declare-sort", "define-sort", "define-fun-rec", "define-funs-rec",
    "reset", "reset-assertions", "get-info", "get-option", "set-option", "echo", "get-assignment",
}


class _Builder:
    def __init__(self, order: VariableOrder, defs: Dict[str, SExpr], table: AtomTable):
        self.order = order
        self.defs = defs
        self.table = table
        self._def_cache: Dict[str, object] = {}

    def term(self, e: SExpr, env: Dict[str, object]):
        """A Polynomial for Real terms or a Formula for Boolean terms."""
        if isinstance(e, Token):
            return self._leaf(e, env)
        if not e.items:
            raise ParseError("empty application", *_pos(e))
        head = _head(e)
        if head is None:
            raise ParseError("application head must be a symbol", *_pos(e))
        args = e.items[1:]
        if head in ("forall", "exists"):
            raise ParseError("quantifier unsupported", *_pos(e))
        if head == "let":
            return self._let(e, args, env)
        if head == "!":
            if not args:
                raise ParseError("annotation without a term", *_pos(e))
            return self.term(args[0], env)
        if head in ("+", "-", "*", "/"):
            return self._arith(head, e, [self.real(a, env) for a in args])
        if head in _RELATIONS or head == "distinct":
            return self._relation(head, e, args, env)
        if head in ("and", "or", "not", "=>", "xor"):
            fs = [self.boolean(a, env) for a in args]
            if head == "and":
                return And(tuple(fs)) if fs else TRUE
            if head == "or":
                return Or(tuple(fs)) if fs else FALSE
            if head == "not":
                if len(fs) != 1:
                    raise ParseError("not takes exactly one argument", *_pos(e))
                return Not(fs[0])
            if head == "=>":
                if len(fs) < 2:
                    raise ParseError("=> takes at least two arguments", *_pos(e))
                acc = fs[-1]
                for f in reversed(fs[:-1]):
                    acc = Or((Not(f), acc))
                return acc
            raise ParseError("xor unsupported", *_pos(e))
        if head == "ite":
            raise ParseError("ite unsupported", *_pos(e))
        if head in ("to_real", "to_int", "is_int", "abs", "div", "mod", "^"):
            raise ParseError(f"operator {head} unsupported", *_pos(e))
        if head in self.defs or head in self.order or head in env:
            raise ParseError(f"uninterpreted function application {head} unsupported", *_pos(e))
        raise ParseError(f"unknown function symbol {head}", *_pos(e))

    def real(self, e: SExpr, env) -> Polynomial:
        v = self.term(e, env)
        if not isinstance(v, Polynomial):
            raise ParseError("expected a Real term, found a Boolean one", *_pos(e))
        return v

    def boolean(self, e: SExpr, env) -> Formula:
        v = self.term(e, env)
        if isinstance(v, Polynomial):
            raise ParseError("expected a Boolean term, found a Real one", *_pos(e))
        return v

    def _leaf(self, tok: Token, env):
        if tok.kind == "numeral":
            return Polynomial.constant(self.order, int(tok.text))
        if tok.kind == "decimal":
            return Polynomial.constant(self.order, Fraction(tok.text))
        if tok.kind != "symbol":
            raise ParseError(f"unexpected {tok.kind} {tok.text!r}", tok.line, tok.col)
        name = tok.text
        if name in env:
            return env[name]
        if name == "true":
            return TRUE
        if name == "false":
            return FALSE
        if name in self.defs:
            if name not in self._def_cache:
                self._def_cache[name] = self.term(self.defs[name], {})
            return self._def_cache[name]
        if name in self.order:
            return Polynomial.variable(self.order, name)
        raise ParseError(f"undeclared symbol {name}", tok.line, tok.col)

    def _let(self, e: SList, args, env):
        if len(args) != 2 or not isinstance(args[0], SList):
            raise ParseError("malformed let", *_pos(e))
        new_env = dict(env)
        for b in args[0].items:
            if not (isinstance(b, SList) and len(b.items) == 2 and isinstance(b.items[0], Token)):
                raise ParseError("malformed let binding", *_pos(b))
            new_env[b.items[0].text] = self.term(b.items[1], env)
        return self.term(args[1], new_env)

    def _arith(self, head: str, e: SList, vals: List[Polynomial]) -> Polynomial:
        if not vals:
            raise ParseError(f"{head} needs arguments", *_pos(e))
        if head == "+":
            acc = vals[0]
            for v in vals[1:]:
                acc = acc + v
            return acc
        if head == "-":
            if len(vals) == 1:
                return -vals[0]
            acc = vals[0]
            for v in vals[1:]:
                acc = acc - v
            return acc
        if head == "*":
            acc = vals[0]
            for v in vals[1:]:
                acc = acc * v
            return acc
        acc = vals[0]
        if len(vals) < 2:
            raise ParseError("/ needs at least two arguments", *_pos(e))
        for v in vals[1:]:
            if not v.is_constant():
                raise ParseError("division by non-constant unsupported", *_pos(e))
            if v.is_zero():
                raise ParseError("division by zero", *_pos(e))
            acc = acc / v.constant_value()
        return acc

    def _relation(self, head: str, e: SList, args, env) -> Formula:
        if len(args) < 2:
            raise ParseError(f"{head} needs at least two arguments", *_pos(e))
        vals = [self.term(a, env) for a in args]
        if head == "=" and not isinstance(vals[0], Polynomial):
            fs = []
            for a, v in zip(args, vals):
                if isinstance(v, Polynomial):
                    raise ParseError("mixed Boolean and Real arguments to =", *_pos(a))
                fs.append(v)
            parts = [Or((And((x, y)), And((Not(x), Not(y))))) for x, y in zip(fs, fs[1:])]
            return parts[0] if len(parts) == 1 else And(tuple(parts))
        for a, v in zip(args, vals):
            if not isinstance(v, Polynomial):
                raise ParseError(f"{head} expects Real arguments", *_pos(a))
        if head == "distinct":
            parts = [self.table.atom(vals[i] - vals[j], "!=")
                     for i in range(len(vals)) for j in range(i + 1, len(vals))]
        else:
            parts = [self.table.atom(x - y, _RELATIONS[head]) for x, y in zip(vals, vals[1:])]
        return parts[0] if len(parts) == 1 else And(tuple(parts))


def _sort_name(e: SExpr) -> str:
    if isinstance(e, Token):
        return e.text
    return "(" + " ".join(_sort_name(x) for x in e.items) + ")"


def parse_script(text: str, var_order: Optional[Sequence[str]] = None) -> Script:
    exprs = read_sexprs(text)
    declared: List[str] = []
    defs: Dict[str, SExpr] = {}
    info: Dict[str, str] = {}
    # first pass: declarations fix the variable order
    for cmd in exprs:
        if not isinstance(cmd, SList) or not cmd.items:
            raise ParseError("expected a command", *_pos(cmd))
        head = _head(cmd)
        if head is None:
            raise ParseError("malformed command", *_pos(cmd))
        args = cmd.items[1:]
        if head == "declare-const":
            if len(args) != 2 or not isinstance(args[0], Token):
                raise ParseError("malformed declare-const", *_pos(cmd))
            name, sort = args[0].text, args[1]
        elif head == "declare-fun":
            if len(args) != 3 or not isinstance(args[0], Token) or not isinstance(args[1], SList):
                raise ParseError("malformed declare-fun", *_pos(cmd))
            if args[1].items:
                raise ParseError(f"uninterpreted function {args[0].text} of arity {len(args[1].items)} unsupported",
                                 *_pos(cmd))
            name, sort = args[0].text, args[2]
        else:
            continue
        if _sort_name(sort) != "Real":
            raise ParseError(f"sort {_sort_name(sort)} unsupported", *_pos(sort))
        if name in declared or name in defs:
            raise ParseError(f"symbol {name} declared twice", *_pos(cmd))
        declared.append(name)
    if var_order is not None:
        if sorted(var_order) != sorted(declared):
            raise ParseError(f"variable order {list(var_order)} does not match the declared variables {declared}")
        declared = list(var_order)
    order = VariableOrder(declared)
    table = AtomTable()
    builder = _Builder(order, defs, table)
    assertions: List[Formula] = []
    commands: List[Tuple[str, Optional[int]]] = []
    for cmd in exprs:
        head = _head(cmd)
        args = cmd.items[1:]
        if head in ("declare-const", "declare-fun"):
            continue
        if head == "set-logic":
            if len(args) != 1 or not isinstance(args[0], Token):
                raise ParseError("malformed set-logic", *_pos(cmd))
            if args[0].text not in ("QF_NRA", "QF_LRA", "ALL"):
                raise ParseError(f"logic {args[0].text} unsupported", *_pos(args[0]))
        elif head == "set-info":
            if args and isinstance(args[0], Token):
                info[args[0].text] = " ".join(a.text for a in args[1:] if isinstance(a, Token))
        elif head == "define-fun":
            if len(args) != 4 or not isinstance(args[0], Token) or not isinstance(args[1], SList):
                raise ParseError("malformed define-fun", *_pos(cmd))
            if args[1].items:
                raise ParseError(f"define-fun {args[0].text} with parameters unsupported", *_pos(cmd))
            sort = _sort_name(args[2])
            if sort not in ("Real", "Bool"):
                raise ParseError(f"sort {sort} unsupported", *_pos(args[2]))
            name = args[0].text
            if name in order or name in defs:
                raise ParseError(f"symbol {name} declared twice", *_pos(cmd))
            defs[name] = args[3]
            value = builder.term(args[3], {})
            if isinstance(value, Polynomial) != (sort == "Real"):
                raise ParseError(f"body of {name} does not have sort {sort}", *_pos(args[3]))
        elif head == "assert":
            if len(args) != 1:
                raise ParseError("assert takes one term", *_pos(cmd))
            assertions.append(builder.boolean(args[0], {}))
        elif head == "check-sat":
            commands.append(("check-sat", len(assertions)))
        elif head == "get-model":
            commands.append(("get-model", None))
        elif head == "exit":
            commands.append(("exit", None))
            break
        elif head in _UNSUPPORTED_COMMANDS:
            raise ParseError(f"command {head} unsupported", *_pos(cmd))
        else:
            raise ParseError(f"unknown command {head}", *_pos(cmd))
    return Script(order, assertions, commands, table, info)


def parse_smtlib(text: str, var_order: Optional[Sequence[str]] = None) -> Tuple[Formula, VariableOrder]:
    script = parse_script(text, var_order)
    return script.formula(), script.order


# ---------------------------------------------------------------------------
# printing


def rational_sexpr(q: Fraction) -> str:
    q = Fraction(q)
    body = str(abs(q.numerator)) if q.denominator == 1 else f"(/ {abs(q.numerator)} {q.denominator})"
    return f"(- {body})" if q < 0 else body


def _monomial_sexpr(order: Sequence[str], exp) -> List[str]:
    factors = []
    for v in range(len(exp) - 1, -1, -1):
        factors.extend([order[v]] * exp[v])
    return factors


def poly_sexpr(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    terms = []
    for exp, c in p.sorted_terms():
        factors = _monomial_sexpr(p.order, exp)
        if not factors:
            terms.append(rational_sexpr(c))
            continue
        if c not in (1, -1):
            factors.insert(0, rational_sexpr(c))
        t = factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})"
        terms.append(f"(- {t})" if c == -1 else t)
    return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def upoly_sexpr(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"(^ {var} {k})")
        if not mono:
            terms.append(rational_sexpr(Fraction(c)))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"(* {rational_sexpr(Fraction(c))} {mono})")
    if not terms:
        return "0"
    return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def value_sexpr(r: RealAlgebraic) -> str:
    if r.is_rational():
        return rational_sexpr(r.value)
    return f"(root-obj {upoly_sexpr(r.defining)} {r.root_index()})"


def formula_sexpr(f: Formula) -> str:
    if isinstance(f, BoolConst):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        c = f.constraint
        if c.relation == "!=":
            return f"(distinct {poly_sexpr(c.poly)} 0)"
        return f"({c.relation} {poly_sexpr(c.poly)} 0)"
    if isinstance(f, Not):
        return f"(not {formula_sexpr(f.arg)})"
    op = "and" if isinstance(f, And) else "or"
    return f"({op} {' '.join(formula_sexpr(a) for a in f.args)})"


def script_text(f: Formula, order: Sequence[str], logic: str = "QF_NRA") -> str:
    lines = [f"(set-logic {logic})"]
    lines.extend(f"(declare-const {v} Real)" for v in order)
    lines.append(f"(assert {formula_sexpr(f)})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def model_text(model: Dict[str, RealAlgebraic], order: Sequence[str]) -> str:
    defs = " ".join(f"(define-fun {v} () Real {value_sexpr(model[v])})" for v in order)
    return f"(model {defs})" if defs else "(model)"
