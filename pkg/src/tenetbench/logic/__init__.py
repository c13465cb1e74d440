"""Expression language: parsing, printing, substitution, unification,
polarity analysis, normalization, and a finite-trace evaluation oracle."""

from .exprs import (
    Always,
    And,
    Atom,
    Eventually,
    Expr,
    FormalAtom,
    Implies,
    InformalAtom,
    Leaf,
    MacroCall,
    Next,
    Not,
    Or,
    PastWithin,
    atoms,
    children,
    free_vars,
    informal_atoms,
    is_formal,
    is_ground,
    walk,
)
from .normalize import NormalizeError, negate_simplify, normalize, strip_double_negations
from .occurrences import Occurrence, Polarity, find_occurrences, polarity_at, replace_at, subexpr_at
from .parser import ParseError, parse_expr, parse_term
from .printer import print_expr, print_term
from .subst import EMPTY_SUBSTITUTION, Substitution, apply_subst, subst_term
from .terms import Compound, Const, Duration, Num, Term, Var
from .traces import EvalError, State, Trace, evaluate, trace_of
from .unify import unify, unify_terms

__all__ = [
    "Always", "And", "Atom", "Compound", "Const", "Duration", "EMPTY_SUBSTITUTION",
    "EvalError", "Eventually", "Expr", "FormalAtom", "Implies", "InformalAtom", "Leaf",
    "MacroCall", "Next", "NormalizeError", "Not", "Num", "Occurrence", "Or", "ParseError",
    "PastWithin", "Polarity", "State", "Substitution", "Term", "Trace", "Var",
    "apply_subst", "atoms", "children", "evaluate", "find_occurrences", "free_vars",
    "informal_atoms", "is_formal", "is_ground", "negate_simplify", "normalize",
    "parse_expr", "parse_term", "polarity_at", "print_expr", "print_term", "replace_at",
    "strip_double_negations", "subexpr_at", "subst_term", "trace_of", "unify",
    "unify_terms", "walk",
]
