"""Seeded random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random

from tenetbench.logic import (
    Always,
    And,
    Atom,
    Compound,
    Const,
    Duration,
    Eventually,
    Expr,
    FormalAtom,
    Implies,
    InformalAtom,
    Leaf,
    MacroCall,
    Next,
    Not,
    Num,
    Or,
    PastWithin,
    State,
    Term,
    Trace,
    Var,
)

PHRASES = ["keep healthy", "enough food", "not enough drink", "Accompany  Excursion", "<1.2L/day"]
PREDICATES = ["remind", "do", "issued", "alerted", "monitor"]
CONSTS = ["breakfast", "lunch", "dinner", "drink"]
VARS = ["X", "Y", "M", "T"]
COMPARISONS = ["=", "!=", "<", ">", "<=", ">="]


def random_term(rng: random.Random, depth: int, allow_vars: bool = True) -> Term:
    choices = ["const", "num"]
    if allow_vars:
        choices.append("var")
    if depth > 0:
        choices += ["compound", "plus"]
    kind = rng.choice(choices)
    if kind == "var":
        return Var(rng.choice(VARS))
    if kind == "const":
        return Const(rng.choice(CONSTS))
    if kind == "num":
        return Num(rng.randrange(0, 200), rng.choice([None, None, "m", "h", "d"]))
    if kind == "plus":
        return Compound(
            "+",
            (random_term(rng, depth - 1, allow_vars), random_term(rng, depth - 1, allow_vars)),
        )
    args = tuple(random_term(rng, depth - 1, allow_vars) for _ in range(rng.randint(1, 2)))
    return Compound(rng.choice(PREDICATES), args)


def random_atom(rng: random.Random, allow_vars: bool = True) -> Expr:
    kind = rng.choice(["formal", "formal", "informal", "comparison", "macro"])
    if kind == "informal":
        args = tuple(random_term(rng, 1, allow_vars) for _ in range(rng.randint(0, 2)))
        return Leaf(InformalAtom(rng.choice(PHRASES), args))
    if kind == "comparison":
        op = rng.choice(COMPARISONS)
        return Leaf(
            FormalAtom(op, (random_term(rng, 1, allow_vars), random_term(rng, 1, allow_vars)))
        )
    if kind == "macro":
        args = tuple(random_term(rng, 1, allow_vars) for _ in range(rng.randint(0, 2)))
        return MacroCall(rng.choice(["PHI", "PSI", "GUARD"]), args)
    args = tuple(random_term(rng, 1, allow_vars) for _ in range(rng.randint(0, 2)))
    return Leaf(FormalAtom(rng.choice(PREDICATES), args))


def random_expr(rng: random.Random, depth: int, allow_vars: bool = True) -> Expr:
    if depth <= 0:
        return random_atom(rng, allow_vars)
    kind = rng.choice(
        ["atom", "not", "and", "or", "implies", "always", "eventually", "next", "past"]
    )
    if kind == "atom":
        return random_atom(rng, allow_vars)
    if kind == "not":
        return Not(random_expr(rng, depth - 1, allow_vars))
    if kind == "and":
        n = rng.randint(2, 3)
        return And(tuple(random_expr(rng, depth - 1, allow_vars) for _ in range(n)))
    if kind == "or":
        n = rng.randint(2, 3)
        return Or(tuple(random_expr(rng, depth - 1, allow_vars) for _ in range(n)))
    if kind == "implies":
        return Implies(random_expr(rng, depth - 1, allow_vars), random_expr(rng, depth - 1, allow_vars))
    if kind == "always":
        return Always(random_expr(rng, depth - 1, allow_vars))
    if kind == "eventually":
        return Eventually(random_expr(rng, depth - 1, allow_vars))
    if kind == "next":
        return Next(random_expr(rng, depth - 1, allow_vars))
    return PastWithin(
        Duration(rng.choice([5, 15, 60]), rng.choice(["m", "h"])),
        random_expr(rng, depth - 1, allow_vars),
    )


# -- ground formal formulas and traces, for the evaluation oracle ---------

GROUND_ATOMS: tuple[Atom, ...] = (
    FormalAtom("p"),
    FormalAtom("q"),
    FormalAtom("r"),
    FormalAtom("stalled", (Const("robot"),)),
)


def random_ground_formula(rng: random.Random, depth: int, atom_pool: tuple[Atom, ...] = GROUND_ATOMS) -> Expr:
    if depth <= 0:
        if rng.random() < 0.15:
            op = rng.choice(COMPARISONS)
            ordering = op in ("<", ">", "<=", ">=")
            if not ordering and rng.random() < 0.5:
                terms = (Const(rng.choice(CONSTS)), Const(rng.choice(CONSTS)))
            else:
                terms = (Num(rng.randrange(0, 5)), Num(rng.randrange(0, 5)))
            return Leaf(FormalAtom(op, terms))
        return Leaf(rng.choice(atom_pool))
    kind = rng.choice(["atom", "not", "and", "or", "implies", "always", "eventually", "next", "past"])
    if kind == "atom":
        return random_ground_formula(rng, 0, atom_pool)
    if kind == "not":
        return Not(random_ground_formula(rng, depth - 1, atom_pool))
    if kind == "and":
        return And(tuple(random_ground_formula(rng, depth - 1, atom_pool) for _ in range(rng.randint(2, 3))))
    if kind == "or":
        return Or(tuple(random_ground_formula(rng, depth - 1, atom_pool) for _ in range(rng.randint(2, 3))))
    if kind == "implies":
        return Implies(
            random_ground_formula(rng, depth - 1, atom_pool),
            random_ground_formula(rng, depth - 1, atom_pool),
        )
    if kind == "always":
        return Always(random_ground_formula(rng, depth - 1, atom_pool))
    if kind == "eventually":
        return Eventually(random_ground_formula(rng, depth - 1, atom_pool))
    if kind == "next":
        return Next(random_ground_formula(rng, depth - 1, atom_pool))
    return PastWithin(Duration(rng.choice([1, 2, 5])), random_ground_formula(rng, depth - 1, atom_pool))


def random_trace(rng: random.Random, max_len: int = 5, atom_pool: tuple[Atom, ...] = GROUND_ATOMS) -> Trace:
    length = rng.randint(1, max_len)
    time = 0
    states = []
    for _ in range(length):
        holds = frozenset(a for a in atom_pool if rng.random() < 0.5)
        states.append(State(time, holds))
        time += rng.randint(1, 3)
    return Trace(tuple(states))
