"""Canonical printer; parse_expr(print_expr(e)) reproduces e structurally."""

from __future__ import annotations

import re

from .exprs import (
    Always,
    And,
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
)
from .terms import Compound, Const, Num, Term, Var

# Binding strength; children printed at a *need* above their own level get parens.
_IMPLIES, _OR, _AND, _UNARY, _ATOM = 1, 2, 3, 4, 5

_BARE_CONST = re.compile(r"[a-z_][A-Za-z0-9_]*\Z")


def print_term(t: Term) -> str:
    return _term(t, top=True)


def _term(t: Term, top: bool) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name if _BARE_CONST.match(t.name) else f'"{t.name}"'
    if isinstance(t, Num):
        return f"{t.value}{t.unit or ''}"
    if isinstance(t, Compound):
        if t.functor == "+" and len(t.args) == 2:
            text = f"{_term(t.args[0], top=True)} + {_term(t.args[1], top=False)}"
            return text if top else f"({text})"
        return f"{t.functor}({', '.join(_term(a, top=True) for a in t.args)})"
    raise TypeError(f"not a term: {t!r}")


def _args(args: tuple[Term, ...]) -> str:
    if not args:
        return ""
    return f"({', '.join(_term(a, top=True) for a in args)})"


def _level(e: Expr) -> int:
    if isinstance(e, Implies):
        return _IMPLIES
    if isinstance(e, Or):
        return _OR
    if isinstance(e, And):
        return _AND
    if isinstance(e, (Not, Always, Eventually, Next, PastWithin)):
        return _UNARY
    return _ATOM


def _p(e: Expr, need: int) -> str:
    if isinstance(e, Leaf):
        atom = e.atom
        if isinstance(atom, InformalAtom):
            text = f'"{atom.phrase}"{_args(atom.args)}'
        elif isinstance(atom, FormalAtom) and atom.interpreted:
            text = f"{_term(atom.args[0], top=True)} {atom.predicate} {_term(atom.args[1], top=True)}"
        else:
            text = f"{atom.predicate}{_args(atom.args)}"
    elif isinstance(e, MacroCall):
        text = f"{e.name}{_args(e.args)}"
    elif isinstance(e, Not):
        text = f"!{_p(e.body, _UNARY)}"
    elif isinstance(e, Always):
        text = f"[]{_p(e.body, _UNARY)}"
    elif isinstance(e, Eventually):
        text = f"<>{_p(e.body, _UNARY)}"
    elif isinstance(e, Next):
        text = f"() {_p(e.body, _UNARY)}"
    elif isinstance(e, PastWithin):
        text = f"P<{e.bound} {_p(e.body, _UNARY)}"
    elif isinstance(e, And):
        text = " & ".join(_p(i, _UNARY) for i in e.items)
    elif isinstance(e, Or):
        text = " | ".join(_p(i, _AND) for i in e.items)
    elif isinstance(e, Implies):
        text = f"{_p(e.lhs, _OR)} -> {_p(e.rhs, _IMPLIES)}"
    else:
        raise TypeError(f"not an expression: {e!r}")
    if _level(e) < need:
        return f"({text})"
    return text


def print_expr(e: Expr) -> str:
    return _p(e, 0)
