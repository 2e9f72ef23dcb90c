"""Command-line entry point: ``cdcac FILE.smt2`` prints sat, unsat or unknown."""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .poly import ContractViolation
from .realroots import RealAlgebraic
from .search import SearchResult, boolean_search, check_model
from .smtlib import ParseError, atoms_of, model_text, parse_script
from .solver import SAT
from .trace import Tracer

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INTERNAL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> List[float]:
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("expected xmin,xmax,ymin,ymax")
    return vals


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cdcac", description="Decide QF_NRA SMT-LIB problems with cylindrical algebraic coverings.")
    ap.add_argument("input", help="SMT-LIB file, or - for standard input")
    ap.add_argument("--var-order", metavar="V1,V2,...", help="variable order, lowest first (default: declaration order)")
    ap.add_argument("--trace", metavar="FILE", help="write JSON-lines solver events to FILE")
    ap.add_argument("--stats", action="store_true", help="print counters to stderr")
    ap.add_argument("--strict-complete", action="store_true",
                    help="answer unknown instead of continuing after a nullification")
    ap.add_argument("--check-model", action="store_true", help="re-verify sat models exactly")
    ap.add_argument("--plot", metavar="FILE.svg", help="draw a two-variable instance and its x-covering")
    ap.add_argument("--viewport", type=_floats, metavar="XMIN,XMAX,YMIN,YMAX", help="plot window")
    ap.add_argument("--timeout", type=float, metavar="SECONDS", help="give up with unknown after this long")
    return ap


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = _read(args.input)
    except OSError as exc:
        print(f"cdcac: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return EXIT_USAGE
    var_order = args.var_order.split(",") if args.var_order else None
    try:
        script = parse_script(text, var_order)
    except ParseError as exc:
        print(f"cdcac: parse error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.plot and len(script.order) != 2:
        print(f"cdcac: --plot needs exactly 2 variables, the instance has {len(script.order)}", file=sys.stderr)
        return EXIT_USAGE
    if args.timeout is not None and args.timeout <= 0:
        print("cdcac: --timeout must be positive", file=sys.stderr)
        return EXIT_USAGE

    trace_fh = None
    try:
        if args.trace:
            trace_fh = open(args.trace, "w", encoding="utf-8")
        tracer = Tracer(sink=trace_fh)
        return _execute(script, args, tracer)
    except (ContractViolation, ArithmeticError, AssertionError, ValueError, RecursionError) as exc:
        print(f"cdcac: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(f"cdcac: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if trace_fh is not None:
            trace_fh.close()


def _execute(script, args, tracer: Tracer) -> int:
    commands = script.commands
    if not any(cmd == "check-sat" for cmd, _ in commands):
        commands = commands + [("check-sat", len(script.assertions))]
    last: Optional[SearchResult] = None
    for cmd, upto in commands:
        if cmd == "exit":
            break
        if cmd == "get-model":
            if last is None or last.verdict != SAT:
                print('(error "model is not available")')
            else:
                print(model_text(last.witness, script.order))
            continue
        formula = script.formula(upto)
        last = boolean_search(formula, script.order, strict=args.strict_complete, tracer=tracer,
                              timeout=args.timeout, table=script.table)
        print(last.verdict)
        sys.stdout.flush()
        for d in last.diagnostics:
            print(f"cdcac: {d}", file=sys.stderr)
        if args.check_model and last.verdict == SAT:
            if not check_model(formula, script.order, last.witness):
                print("cdcac: model check FAILED", file=sys.stderr)
                return EXIT_INTERNAL
            print("cdcac: model check passed", file=sys.stderr)
        if args.stats:
            print(json.dumps(last.stats, sort_keys=True), file=sys.stderr)
        if args.plot:
            from .plotting import plot_instance

            witness = None
            if last.verdict == SAT:
                witness = tuple(last.witness.get(v, RealAlgebraic(0)) for v in script.order)
            plot_instance(args.plot, atoms_of(formula), script.order, last.cover, witness, args.viewport)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
