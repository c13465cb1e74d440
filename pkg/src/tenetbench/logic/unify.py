"""Syntactic unification over terms and expressions (Robinson, with occurs check)."""

from __future__ import annotations

from .exprs import (
    And,
    Expr,
    FormalAtom,
    Implies,
    InformalAtom,
    Leaf,
    MacroCall,
    Not,
    Or,
    PastWithin,
    children,
)
from .subst import Substitution, subst_term
from .terms import Compound, Num, Term, Var, term_vars


def _bind(name: str, term: Term, bindings: dict[str, Term]) -> bool:
    term = _resolve(term, bindings)
    if isinstance(term, Var) and term.name == name:
        return True
    if name in term_vars(_ground_out(term, bindings)):
        return False
    bindings[name] = term
    return True


def _resolve(t: Term, bindings: dict[str, Term]) -> Term:
    while isinstance(t, Var) and t.name in bindings:
        t = bindings[t.name]
    return t


def _ground_out(t: Term, bindings: dict[str, Term]) -> Term:
    t = _resolve(t, bindings)
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(_ground_out(a, bindings) for a in t.args))
    return t


def _unify_terms(a: Term, b: Term, bindings: dict[str, Term]) -> bool:
    a = _resolve(a, bindings)
    b = _resolve(b, bindings)
    if isinstance(a, Var):
        return _bind(a.name, b, bindings)
    if isinstance(b, Var):
        return _bind(b.name, a, bindings)
    if isinstance(a, Num) or isinstance(b, Num):
        return a == b
    if isinstance(a, Compound) and isinstance(b, Compound):
        if a.functor != b.functor or len(a.args) != len(b.args):
            return False
        return all(_unify_terms(x, y, bindings) for x, y in zip(a.args, b.args))
    return a == b


def _unify_args(a: tuple[Term, ...], b: tuple[Term, ...], bindings: dict[str, Term]) -> bool:
    if len(a) != len(b):
        return False
    return all(_unify_terms(x, y, bindings) for x, y in zip(a, b))


def _unify_exprs(p: Expr, q: Expr, bindings: dict[str, Term]) -> bool:
    if isinstance(p, Leaf) and isinstance(q, Leaf):
        pa, qa = p.atom, q.atom
        if isinstance(pa, FormalAtom) and isinstance(qa, FormalAtom):
            return pa.predicate == qa.predicate and _unify_args(pa.args, qa.args, bindings)
        if isinstance(pa, InformalAtom) and isinstance(qa, InformalAtom):
            return (
                pa.phrase.casefold() == qa.phrase.casefold()
                and _unify_args(pa.args, qa.args, bindings)
            )
        return False
    if isinstance(p, MacroCall) and isinstance(q, MacroCall):
        return p.name == q.name and _unify_args(p.args, q.args, bindings)
    if type(p) is not type(q):
        return False
    if isinstance(p, PastWithin) and isinstance(q, PastWithin) and p.bound != q.bound:
        return False
    if isinstance(p, (And, Or)) and len(p.items) != len(q.items):  # type: ignore[union-attr]
        return False
    return all(_unify_exprs(cp, cq, bindings) for cp, cq in zip(children(p), children(q)))


def _finish(bindings: dict[str, Term]) -> Substitution:
    # Resolve chains so the result is idempotent.
    return Substitution({name: _ground_out(term, bindings) for name, term in bindings.items()})


def unify(p: Expr, q: Expr) -> Substitution | None:
    """Most general unifier of two expressions, or None."""
    bindings: dict[str, Term] = {}
    if _unify_exprs(p, q, bindings):
        return _finish(bindings)
    return None


def unify_terms(a: Term, b: Term) -> Substitution | None:
    bindings: dict[str, Term] = {}
    if _unify_terms(a, b, bindings):
        return _finish(bindings)
    return None


def match_subsumes(general: Expr, specific: Expr) -> Substitution | None:
    """One-sided match: a substitution for `general`'s variables making it equal `specific`."""
    theta = unify(general, specific)
    if theta is None:
        return None
    from .subst import apply_subst

    if apply_subst(general, theta) == specific:
        return theta
    return None


__all__ = ["unify", "unify_terms", "match_subsumes"]
