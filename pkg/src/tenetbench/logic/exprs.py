"""Expression tree over informal phrase atoms and formal LTL atoms.

An expression is *formal* when every atom in it is a FormalAtom and every
macro call resolves to a formal body.  Informal phrases compare
case-insensitively with collapsed whitespace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterator

from .terms import Duration, Term, term_vars

INTERPRETED_PREDICATES = ("=", "!=", "<", ">", "<=", ">=")


class Atom:
    __slots__ = ()


@dataclass(frozen=True)
class FormalAtom(Atom):
    predicate: str
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        if self.interpreted and len(self.args) != 2:
            raise ValueError(f"comparison {self.predicate!r} takes exactly two terms")

    @property
    def interpreted(self) -> bool:
        return self.predicate in INTERPRETED_PREDICATES


def normalize_phrase(text: str) -> str:
    return " ".join(text.split())


@dataclass(frozen=True, eq=False)
class InformalAtom(Atom):
    phrase: str
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        collapsed = normalize_phrase(self.phrase)
        if not collapsed:
            raise ValueError("informal phrase is empty")
        object.__setattr__(self, "phrase", collapsed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InformalAtom):
            return NotImplemented
        return self.phrase.casefold() == other.phrase.casefold() and self.args == other.args

    def __hash__(self) -> int:
        return hash(("InformalAtom", self.phrase.casefold(), self.args))


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Leaf(Expr):
    atom: Atom


@dataclass(frozen=True)
class Not(Expr):
    body: Expr


@dataclass(frozen=True)
class And(Expr):
    items: tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("conjunction needs at least two operands")


@dataclass(frozen=True)
class Or(Expr):
    items: tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2:
            raise ValueError("disjunction needs at least two operands")


@dataclass(frozen=True)
class Implies(Expr):
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Always(Expr):
    body: Expr


@dataclass(frozen=True)
class Eventually(Expr):
    body: Expr


@dataclass(frozen=True)
class Next(Expr):
    body: Expr


@dataclass(frozen=True)
class PastWithin(Expr):
    bound: Duration
    body: Expr


@dataclass(frozen=True)
class MacroCall(Expr):
    name: str
    args: tuple[Term, ...] = ()

    def __post_init__(self) -> None:
        if not self.name or not self.name[0].isupper():
            raise ValueError(f"macro names start uppercase: {self.name!r}")


def children(e: Expr) -> tuple[Expr, ...]:
    """Direct subexpressions of `e` (terms are not expression positions)."""
    if isinstance(e, Not):
        return (e.body,)
    if isinstance(e, (And, Or)):
        return e.items
    if isinstance(e, Implies):
        return (e.lhs, e.rhs)
    if isinstance(e, (Always, Eventually, Next)):
        return (e.body,)
    if isinstance(e, PastWithin):
        return (e.body,)
    return ()


def with_children(e: Expr, new: tuple[Expr, ...]) -> Expr:
    """Rebuild `e` with replaced subexpressions."""
    if isinstance(e, Not):
        return Not(new[0])
    if isinstance(e, And):
        return And(new)
    if isinstance(e, Or):
        return Or(new)
    if isinstance(e, Implies):
        return Implies(new[0], new[1])
    if isinstance(e, Always):
        return Always(new[0])
    if isinstance(e, Eventually):
        return Eventually(new[0])
    if isinstance(e, Next):
        return Next(new[0])
    if isinstance(e, PastWithin):
        return PastWithin(e.bound, new[0])
    if new:
        raise ValueError(f"{type(e).__name__} has no subexpressions")
    return e


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal (leftmost-outermost first)."""
    yield e
    for c in children(e):
        yield from walk(c)


def atoms(e: Expr) -> Iterator[Atom]:
    for sub in walk(e):
        if isinstance(sub, Leaf):
            yield sub.atom


def free_vars(e: Expr) -> set[str]:
    out: set[str] = set()
    for sub in walk(e):
        if isinstance(sub, Leaf):
            args = sub.atom.args if isinstance(sub.atom, (FormalAtom, InformalAtom)) else ()
            for t in args:
                out |= term_vars(t)
        elif isinstance(sub, MacroCall):
            for t in sub.args:
                out |= term_vars(t)
    return out


def is_ground(e: Expr) -> bool:
    return not free_vars(e)


def is_formal(e: Expr, known_macros: Collection[str] = ()) -> bool:
    """True when no informal atom remains and all macro calls resolve."""
    for sub in walk(e):
        if isinstance(sub, Leaf) and isinstance(sub.atom, InformalAtom):
            return False
        if isinstance(sub, MacroCall) and sub.name not in known_macros:
            return False
    return True


def informal_atoms(e: Expr) -> list[InformalAtom]:
    return [a for a in atoms(e) if isinstance(a, InformalAtom)]
