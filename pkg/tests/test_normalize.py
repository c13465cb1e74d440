import random

import pytest

from tenetbench.logic import (
    MacroCall,
    NormalizeError,
    evaluate,
    negate_simplify,
    normalize,
    parse_expr,
    print_expr,
    strip_double_negations,
)

from genutil import random_ground_formula, random_trace


def test_negate_simplify_collapses_double_negation():
    assert negate_simplify(parse_expr("!PHI(breakfast)")) == parse_expr("PHI(breakfast)")


def test_negate_simplify_adds_negation():
    assert negate_simplify(parse_expr("p")) == parse_expr("!p")


def test_negate_simplify_is_involution_up_to_double_negation():
    rng = random.Random(5)
    for _ in range(200):
        e = random_ground_formula(rng, 4)
        assert negate_simplify(negate_simplify(e)) == strip_double_negations(e)


def test_negate_simplify_flips_truth():
    rng = random.Random(6)
    for _ in range(200):
        e = random_ground_formula(rng, 3)
        t = random_trace(rng)
        assert evaluate(negate_simplify(e), t) == (not evaluate(e, t))


def test_medication_normal_form():
    # Hand application of the normalization rules: !<> becomes []!, the
    # negated conjunction spreads, and !(M != MP) flips to M = MP.
    e = parse_expr("!<>(issued(M) & prescribed(MP) & M != MP)")
    assert print_expr(normalize(e)) == "[](!issued(M) | !prescribed(MP) | M = MP)"


def test_medication_form_agrees_with_implication_form():
    negated_leaf = parse_expr("!<>(issued(M) & prescribed(MP) & M != MP)")
    implication = parse_expr("[](issued(M) & prescribed(MP) -> M = MP)")
    assert normalize(negated_leaf) == normalize(implication)


def test_implication_elimination():
    assert print_expr(normalize(parse_expr("[](a -> b)"))) == "[](!a | b)"


def test_normalize_is_idempotent():
    rng = random.Random(7)
    for _ in range(300):
        e = random_ground_formula(rng, 4)
        n = normalize(e)
        assert normalize(n) == n


def test_normalize_preserves_finite_trace_truth():
    rng = random.Random(8)
    for _ in range(300):
        e = random_ground_formula(rng, 4)
        n = normalize(e)
        for _ in range(5):
            t = random_trace(rng)
            assert evaluate(e, t) == evaluate(n, t), print_expr(e)


def test_normalize_rejects_unresolved_macros():
    with pytest.raises(NormalizeError):
        normalize(MacroCall("PHI"))


def test_operands_sorted_by_print_order():
    assert normalize(parse_expr("q & p")) == normalize(parse_expr("p & q"))
