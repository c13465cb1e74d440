"""Substitutions: finite, idempotent maps from variable names to terms."""

from __future__ import annotations

from typing import Iterator, Mapping

from .exprs import Expr, FormalAtom, InformalAtom, Leaf, MacroCall, children, with_children
from .terms import Compound, Term, Var, term_vars


class Substitution:
    """Immutable variable binding map.  No binding may contain its own variable."""

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[str, Term] | None = None):
        items = dict(bindings or {})
        for name, term in items.items():
            if isinstance(term, Var) and term.name == name:
                raise ValueError(f"identity binding for {name}")
            if name in term_vars(term):
                raise ValueError(f"occurs check: {name} bound to a term containing it")
        self._bindings = items

    def get(self, name: str) -> Term | None:
        return self._bindings.get(name)

    def items(self) -> Iterator[tuple[str, Term]]:
        return iter(sorted(self._bindings.items()))

    def as_dict(self) -> dict[str, Term]:
        return dict(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __contains__(self, name: str) -> bool:
        return name in self._bindings

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Substitution):
            return NotImplemented
        return self._bindings == other._bindings

    def __repr__(self) -> str:
        inner = ", ".join(f"{k} -> {v}" for k, v in self.items())
        return f"{{{inner}}}"


EMPTY_SUBSTITUTION = Substitution()


def subst_term(t: Term, theta: Substitution) -> Term:
    if isinstance(t, Var):
        bound = theta.get(t.name)
        return bound if bound is not None else t
    if isinstance(t, Compound):
        return Compound(t.functor, tuple(subst_term(a, theta) for a in t.args))
    return t


def apply_subst(e: Expr, theta: Substitution) -> Expr:
    """Replace every bound free variable in `e`; unbound variables stay."""
    if isinstance(e, Leaf):
        atom = e.atom
        if isinstance(atom, FormalAtom):
            return Leaf(FormalAtom(atom.predicate, tuple(subst_term(a, theta) for a in atom.args)))
        if isinstance(atom, InformalAtom):
            return Leaf(InformalAtom(atom.phrase, tuple(subst_term(a, theta) for a in atom.args)))
        return e
    if isinstance(e, MacroCall):
        return MacroCall(e.name, tuple(subst_term(a, theta) for a in e.args))
    subs = children(e)
    if not subs:
        return e
    return with_children(e, tuple(apply_subst(c, theta) for c in subs))
