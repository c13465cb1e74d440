import random

import pytest

from tenetbench.logic import (
    Always,
    And,
    Const,
    FormalAtom,
    Implies,
    InformalAtom,
    Leaf,
    MacroCall,
    Not,
    ParseError,
    Var,
    parse_expr,
    print_expr,
)

from genutil import random_expr


def test_boxed_implication():
    e = parse_expr("[](remind(X) -> do(X))")
    assert e == Always(
        Implies(
            Leaf(FormalAtom("remind", (Var("X"),))),
            Leaf(FormalAtom("do", (Var("X"),))),
        )
    )


def test_quoted_phrase_is_informal_atom():
    assert parse_expr('"keep healthy"') == Leaf(InformalAtom("keep healthy"))


def test_negated_conjunction_of_phrases():
    e = parse_expr('!("enough food" & "enough drink")')
    assert e == Not(And((Leaf(InformalAtom("enough food")), Leaf(InformalAtom("enough drink")))))


def test_macro_call_and_negation():
    e = parse_expr("!PHI(breakfast)")
    assert e == Not(MacroCall("PHI", (Const("breakfast"),)))
    assert print_expr(e) == "!PHI(breakfast)"


def test_bare_uppercase_name_is_macro_call():
    assert parse_expr("PSI") == MacroCall("PSI")


def test_informal_atom_with_arguments():
    e = parse_expr('"remind"(breakfast)')
    assert e == Leaf(InformalAtom("remind", (Const("breakfast"),)))


def test_next_and_bounded_past():
    text = "P<15m remind(drink) | () remind(drink)"
    e = parse_expr(text)
    assert print_expr(e) == text


def test_comparison_with_term_addition():
    e = parse_expr("T2 > T + 2h")
    assert print_expr(e) == "T2 > T + 2h"
    atom = e.atom
    assert atom.predicate == ">"


def test_duration_literals_compare_in_minutes():
    assert parse_expr("T = 2h") == parse_expr("T = 120m")


def test_phrase_matching_is_case_and_whitespace_insensitive():
    assert parse_expr('"Keep  Healthy"') == parse_expr('"keep healthy"')


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse_expr("remind(X")
    assert "line 1" in str(err.value)


def test_unbalanced_quote():
    with pytest.raises(ParseError, match="unbalanced quote"):
        parse_expr('"keep healthy')


def test_unknown_operator():
    with pytest.raises(ParseError):
        parse_expr("a - b")


def test_trailing_input_rejected():
    with pytest.raises(ParseError, match="trailing"):
        parse_expr("a b")


def test_roundtrip_random_asts():
    rng = random.Random(20260809)
    for _ in range(1000):
        e = random_expr(rng, depth=rng.randint(0, 6))
        assert parse_expr(print_expr(e)) == e, print_expr(e)
