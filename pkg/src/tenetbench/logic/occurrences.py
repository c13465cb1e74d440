"""Locating pattern occurrences inside an expression, with polarity.

A position is negative when the path to it crosses an odd number of
polarity flips; negation bodies and implication antecedents flip,
temporal operators and conjunction/disjunction preserve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .exprs import Expr, Implies, Not, children, with_children
from .subst import Substitution
from .unify import unify


class Polarity(enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


@dataclass(frozen=True)
class Occurrence:
    path: tuple[int, ...]
    polarity: Polarity
    matched: Expr
    theta: Substitution


def _flips(e: Expr, index: int) -> bool:
    if isinstance(e, Not):
        return True
    return isinstance(e, Implies) and index == 0


def polarity_at(e: Expr, path: tuple[int, ...]) -> Polarity:
    """Polarity of the subexpression addressed by `path`."""
    polarity = Polarity.POSITIVE
    current = e
    for index in path:
        subs = children(current)
        if index >= len(subs):
            raise IndexError(f"invalid path {path} in expression")
        if _flips(current, index):
            polarity = polarity.flip()
        current = subs[index]
    return polarity


def subexpr_at(e: Expr, path: tuple[int, ...]) -> Expr:
    current = e
    for index in path:
        subs = children(current)
        if index >= len(subs):
            raise IndexError(f"invalid path {path} in expression")
        current = subs[index]
    return current


def replace_at(e: Expr, path: tuple[int, ...], replacement: Expr) -> Expr:
    """`e` with exactly the subexpression at `path` swapped for `replacement`."""
    if not path:
        return replacement
    subs = children(e)
    index = path[0]
    if index >= len(subs):
        raise IndexError(f"invalid path {path} in expression")
    rebuilt = list(subs)
    rebuilt[index] = replace_at(subs[index], path[1:], replacement)
    return with_children(e, tuple(rebuilt))


def find_occurrences(haystack: Expr, pattern: Expr) -> list[Occurrence]:
    """All positions where `pattern` unifies with a subexpression.

    Ordered leftmost-outermost (pre-order).
    """
    found: list[Occurrence] = []

    def visit(e: Expr, path: tuple[int, ...], polarity: Polarity) -> None:
        theta = unify(pattern, e)
        if theta is not None:
            found.append(Occurrence(path, polarity, e, theta))
        for index, sub in enumerate(children(e)):
            visit(sub, path + (index,), polarity.flip() if _flips(e, index) else polarity)

    visit(haystack, (), Polarity.POSITIVE)
    return found
