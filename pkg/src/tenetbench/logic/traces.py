"""Finite-trace evaluation oracle.

Semantics: `always` quantifies over the remaining states, `eventually`
over some remaining state, `next` is strong (false in the final state),
`P<d f` holds when f held at an earlier-or-current state strictly less
than d minutes before now.  Interpreted comparisons evaluate over
integers (durations in minutes) and constant identity; all other atoms,
informal phrases included, are looked up in the state valuation as
opaque propositions.
"""

from __future__ import annotations

from dataclasses import dataclass

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
    free_vars,
)
from .terms import Compound, Const, Num, Term


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class State:
    time: int
    holds: frozenset[Atom]


@dataclass(frozen=True)
class Trace:
    states: tuple[State, ...]

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("a trace needs at least one state")
        times = [s.time for s in self.states]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("timestamps must be strictly increasing")

    def __len__(self) -> int:
        return len(self.states)


def trace_of(*valuations: tuple[int, set[Atom] | frozenset[Atom]]) -> Trace:
    return Trace(tuple(State(t, frozenset(v)) for t, v in valuations))


def _eval_term(t: Term) -> int | str:
    if isinstance(t, Num):
        return t.minutes
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Compound) and t.functor == "+" and len(t.args) == 2:
        a, b = _eval_term(t.args[0]), _eval_term(t.args[1])
        if isinstance(a, int) and isinstance(b, int):
            return a + b
        raise EvalError(f"addition over non-integers in {t}")
    raise EvalError(f"cannot evaluate term {t}")


def _eval_comparison(atom: FormalAtom) -> bool:
    left, right = (_eval_term(a) for a in atom.args)
    op = atom.predicate
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    if not (isinstance(left, int) and isinstance(right, int)):
        raise EvalError(f"ordering comparison over non-integers: {left!r} {op} {right!r}")
    if op == "<":
        return left < right
    if op == ">":
        return left > right
    if op == "<=":
        return left <= right
    return left >= right


def evaluate(e: Expr, trace: Trace, at: int = 0) -> bool:
    """Truth of a ground, macro-free expression at state index `at`."""
    if not 0 <= at < len(trace.states):
        raise EvalError(f"state index {at} out of range")
    if free_vars(e):
        raise EvalError(f"expression is not ground: free variables {sorted(free_vars(e))}")
    return _eval(e, trace, at)


def _eval(e: Expr, trace: Trace, at: int) -> bool:
    states = trace.states
    if isinstance(e, Leaf):
        atom = e.atom
        if isinstance(atom, FormalAtom) and atom.interpreted:
            return _eval_comparison(atom)
        return atom in states[at].holds
    if isinstance(e, MacroCall):
        raise EvalError(f"unresolved macro call {e.name!r}; expand macros first")
    if isinstance(e, Not):
        return not _eval(e.body, trace, at)
    if isinstance(e, And):
        return all(_eval(i, trace, at) for i in e.items)
    if isinstance(e, Or):
        return any(_eval(i, trace, at) for i in e.items)
    if isinstance(e, Implies):
        return not _eval(e.lhs, trace, at) or _eval(e.rhs, trace, at)
    if isinstance(e, Always):
        return all(_eval(e.body, trace, j) for j in range(at, len(states)))
    if isinstance(e, Eventually):
        return any(_eval(e.body, trace, j) for j in range(at, len(states)))
    if isinstance(e, Next):
        return at + 1 < len(states) and _eval(e.body, trace, at + 1)
    if isinstance(e, PastWithin):
        now = states[at].time
        return any(
            now - states[j].time < e.bound.minutes and _eval(e.body, trace, j)
            for j in range(at, -1, -1)
        )
    raise TypeError(f"not an expression: {e!r}")
