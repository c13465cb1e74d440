"""Negation helpers and a canonical normal form for property comparison.

normalize eliminates implications, pushes negations inward (De Morgan,
negated always/eventually become their duals, negated comparisons flip to
the complementary comparison) and sorts flattened conjunctions and
disjunctions by print order.  Negation is *not* pushed through next or
bounded-past operators: with strong next on finite traces that rewrite
would change truth values.
"""

from __future__ import annotations

from .exprs import (
    Always,
    And,
    Eventually,
    Expr,
    FormalAtom,
    Implies,
    Leaf,
    MacroCall,
    Next,
    Not,
    Or,
    PastWithin,
    children,
    with_children,
)
from .printer import print_expr

COMPLEMENT = {"=": "!=", "!=": "=", "<": ">=", ">=": "<", ">": "<=", "<=": ">"}


class NormalizeError(ValueError):
    pass


def strip_double_negations(e: Expr) -> Expr:
    """Collapse every Not(Not(x)) throughout the expression."""
    if isinstance(e, Not) and isinstance(e.body, Not):
        return strip_double_negations(e.body.body)
    subs = children(e)
    if not subs:
        return e
    return with_children(e, tuple(strip_double_negations(c) for c in subs))


def negate_simplify(e: Expr) -> Expr:
    """The negation of `e`, with double negations eliminated."""
    return strip_double_negations(Not(e))


def _flatten(cls: type, items: tuple[Expr, ...]) -> tuple[Expr, ...]:
    out: list[Expr] = []
    for item in items:
        if isinstance(item, cls):
            out.extend(item.items)  # type: ignore[attr-defined]
        else:
            out.append(item)
    return tuple(out)


def _sorted_nary(cls: type, items: tuple[Expr, ...]) -> Expr:
    flat = _flatten(cls, items)
    ordered = tuple(sorted(flat, key=print_expr))
    return cls(ordered)


def _nnf(e: Expr, negated: bool) -> Expr:
    if isinstance(e, MacroCall):
        raise NormalizeError(f"unresolved macro call {e.name!r}; expand macros first")
    if isinstance(e, Leaf):
        atom = e.atom
        if negated and isinstance(atom, FormalAtom) and atom.interpreted:
            return Leaf(FormalAtom(COMPLEMENT[atom.predicate], atom.args))
        return Not(e) if negated else e
    if isinstance(e, Not):
        return _nnf(e.body, not negated)
    if isinstance(e, Implies):
        if negated:  # !(a -> b) == a & !b
            return _sorted_nary(And, (_nnf(e.lhs, False), _nnf(e.rhs, True)))
        return _sorted_nary(Or, (_nnf(e.lhs, True), _nnf(e.rhs, False)))
    if isinstance(e, And):
        parts = tuple(_nnf(i, negated) for i in e.items)
        return _sorted_nary(Or if negated else And, parts)
    if isinstance(e, Or):
        parts = tuple(_nnf(i, negated) for i in e.items)
        return _sorted_nary(And if negated else Or, parts)
    if isinstance(e, Always):
        return Eventually(_nnf(e.body, True)) if negated else Always(_nnf(e.body, False))
    if isinstance(e, Eventually):
        return Always(_nnf(e.body, True)) if negated else Eventually(_nnf(e.body, False))
    if isinstance(e, Next):
        inner = Next(_nnf(e.body, False))
        return Not(inner) if negated else inner
    if isinstance(e, PastWithin):
        inner = PastWithin(e.bound, _nnf(e.body, False))
        return Not(inner) if negated else inner
    raise TypeError(f"not an expression: {e!r}")


def normalize(e: Expr) -> Expr:
    """Canonical form for comparisons; preserves finite-trace truth."""
    return _nnf(e, False)
