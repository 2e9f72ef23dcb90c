"""Satisfiability of real polynomial constraints by cylindrical algebraic coverings."""

from .covering import CoveringInterval, compute_cover, covers_reals, sample_outside
from .oracle import cad_decide
from .poly import (Constraint, ContractViolation, Polynomial, VariableOrder, discriminant,
                   parse_polynomial, resultant, square_free_basis)
from .realroots import RealAlgebraic, evaluate_partial, is_zero_at, isolate_roots, real_roots_with_check, sign_at
from .search import boolean_search, check_model
from .smtlib import ParseError, parse_script, parse_smtlib
from .solver import SAT, UNKNOWN, UNSAT, CoveringSolver, ScriptedSampler, SolveResult, solve
from .trace import Tracer

__all__ = [
    "Constraint", "ContractViolation", "CoveringInterval", "CoveringSolver", "ParseError", "Polynomial",
    "RealAlgebraic", "SAT", "ScriptedSampler", "SolveResult", "Tracer", "UNKNOWN", "UNSAT", "VariableOrder",
    "boolean_search", "cad_decide", "check_model", "compute_cover", "covers_reals", "discriminant",
    "evaluate_partial", "is_zero_at", "isolate_roots", "parse_polynomial", "parse_script", "parse_smtlib",
    "real_roots_with_check", "resultant", "sample_outside", "sign_at", "solve", "square_free_basis",
]
