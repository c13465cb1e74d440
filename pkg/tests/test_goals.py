import itertools
from importlib import resources

import pytest

from tenetbench.goals import (
    Case2Move,
    Decomposition,
    Goal,
    GoalError,
    GoalGraph,
    goal_graph_to_doc,
    goal_graph_from_doc,
    implied_rules,
    insert_phantom,
    match_goals,
    parse_goal_graph,
)
from tenetbench.logic import parse_expr, print_expr


def load_fig3() -> GoalGraph:
    text = resources.files("tenetbench.data").joinpath("care_o_bot/goals_fig3.json").read_text()
    return parse_goal_graph(text)


def load_fig4() -> GoalGraph:
    text = resources.files("tenetbench.data").joinpath("care_o_bot/goals_fig4.json").read_text()
    return parse_goal_graph(text)


def goal(gid, label, decomp="leaf", strengthened=False):
    return Goal(gid, parse_expr(label), Decomposition(decomp), strengthened)


def test_care_o_bot_file_has_fourteen_goals():
    graph = load_fig3()
    assert len(graph.goals) == 14
    assert graph.roots() == ("support",)


def test_single_goal_graph():
    graph = goal_graph_from_doc([{"id": "g", "label": '"alone"'}])
    assert graph.goal("g").decomp is Decomposition.LEAF


def test_self_edge_is_a_cycle():
    with pytest.raises(GoalError, match="cycle"):
        GoalGraph((goal("a", '"a"', "and"),), {"a": ("a",)})


def test_longer_cycle_detected():
    with pytest.raises(GoalError, match="cycle"):
        GoalGraph(
            (goal("a", '"a"', "and"), goal("b", '"b"', "and")),
            {"a": ("b",), "b": ("a",)},
        )


def test_dangling_edge():
    with pytest.raises(GoalError, match="unknown goal"):
        GoalGraph((goal("a", '"a"', "and"),), {"a": ("ghost",)})


def test_duplicate_ids():
    with pytest.raises(GoalError, match="duplicate"):
        goal_graph_from_doc([{"id": "a", "label": '"x"'}, {"id": "a", "label": '"y"'}])


def test_shared_child_is_allowed():
    graph = GoalGraph(
        (goal("p1", '"p1"', "and"), goal("p2", '"p2"', "and"), goal("c", '"c"')),
        {"p1": ("c",), "p2": ("c",)},
    )
    assert graph.children_of("p1") == graph.children_of("p2")


def test_document_roundtrip():
    graph = load_fig4()
    assert goal_graph_from_doc(goal_graph_to_doc(graph)) == graph


# -- implied rules --------------------------------------------------------


def test_and_goal_forward_rule():
    graph = load_fig3()
    rules = implied_rules(graph, "keep-safe")
    forward = [r for r in rules if r.direction == "forward"]
    assert len(forward) == 1
    assert forward[0].lhs == parse_expr('"monitor" & "accompany excursion"')
    assert forward[0].rhs == parse_expr('"keep safe"')


def test_strengthened_and_goal_also_has_reverse_rule():
    graph = load_fig3()
    rules = implied_rules(graph, "keep-safe")
    assert [r.direction for r in rules] == ["forward", "reverse"]
    reverse = rules[1]
    assert reverse.lhs == parse_expr('"keep safe"')
    assert reverse.rhs == parse_expr('"monitor" & "accompany excursion"')


def test_non_strengthened_and_goal_has_single_rule():
    graph = load_fig3()
    assert len(implied_rules(graph, "keep-healthy")) == 1


def test_or_goal_one_forward_rule_per_child():
    graph = GoalGraph(
        (goal("g", '"g"', "or"), goal("a", '"a"'), goal("b", '"b"')),
        {"g": ("a", "b")},
    )
    rules = implied_rules(graph, "g")
    assert [(print_expr(r.lhs), print_expr(r.rhs)) for r in rules] == [
        ('"a"', '"g"'),
        ('"b"', '"g"'),
    ]


def test_implied_rules_on_leaf_goal_is_an_error():
    with pytest.raises(GoalError, match="no children"):
        implied_rules(load_fig3(), "recharge")


# -- goal matching --------------------------------------------------------


def test_special_case_on_negated_phantom_goal():
    graph = load_fig4()
    moves = match_goals(graph, parse_expr('"harm"'))
    assert len(moves) == 1
    move = moves[0]
    assert move.goal.id == "not-harm"
    assert move.occurrence is None
    assert [print_expr(r) for r in move.results] == ['!"keep healthy"', '!"keep safe"']


def test_negative_context_strengthened_and_splits():
    graph = load_fig4()
    moves = match_goals(graph, parse_expr('!"keep safe"'))
    assert len(moves) == 1
    assert [print_expr(r) for r in moves[0].results] == ['!"monitor"', '!"accompany excursion"']


def test_positive_context_and_goal_single_conjunction():
    graph = load_fig4()
    moves = match_goals(graph, parse_expr('"keep safe"'))
    mine = [m for m in moves if m.goal.id == "keep-safe"]
    assert len(mine) == 1
    assert [print_expr(r) for r in mine[0].results] == ['"monitor" & "accompany excursion"']


def test_no_negative_move_for_non_strengthened_goal():
    graph = load_fig4()
    assert match_goals(graph, parse_expr('!"keep healthy"')) == []


def test_positive_or_goal_one_move_per_child():
    graph = GoalGraph(
        (goal("g", '"reach"', "or"), goal("a", '"walk"'), goal("b", '"ride"')),
        {"g": ("a", "b")},
    )
    moves = match_goals(graph, parse_expr('"reach" & p'))
    assert [print_expr(m.results[0]) for m in moves] == ['"walk" & p', '"ride" & p']


def test_negative_or_strengthened_gives_disjunction():
    graph = GoalGraph(
        (goal("g", '"reach"', "or", strengthened=True), goal("a", '"walk"'), goal("b", '"ride"')),
        {"g": ("a", "b")},
    )
    moves = match_goals(graph, parse_expr('!"reach"'))
    assert [print_expr(r) for m in moves for r in m.results] == ['!("walk" | "ride")']


def test_single_child_goal_both_subcases_coincide():
    for decomp in ("and", "or"):
        graph = GoalGraph(
            (goal("g", '"top"', decomp), goal("a", '"only"')),
            {"g": ("a",)},
        )
        moves = match_goals(graph, parse_expr('"top"'))
        assert [print_expr(m.results[0]) for m in moves] == ['"only"']


# -- six table rows, verified by exhaustive truth tables -------------------


def _truth(expr_text: str, assignment: dict[str, bool]) -> bool:
    e = parse_expr(expr_text)

    from tenetbench.logic import And, Implies, InformalAtom, Leaf, Not, Or

    def ev(x) -> bool:
        if isinstance(x, Leaf):
            assert isinstance(x.atom, InformalAtom)
            return assignment[x.atom.phrase]
        if isinstance(x, Not):
            return not ev(x.body)
        if isinstance(x, And):
            return all(ev(i) for i in x.items)
        if isinstance(x, Or):
            return any(ev(i) for i in x.items)
        if isinstance(x, Implies):
            return not ev(x.lhs) or ev(x.rhs)
        raise AssertionError(f"unexpected node {x}")

    return ev(e)


@pytest.mark.parametrize("decomp", ["or", "and"])
@pytest.mark.parametrize("strengthened", [False, True])
@pytest.mark.parametrize("shape", ["positive", "negative", "special"])
def test_table_rows_child_implies_parent(decomp, strengthened, shape):
    """Each row's children imply the parent on every admissible assignment.

    Assignments are restricted to those satisfying the decomposition's
    implied domain knowledge (the biconditional when strengthened).
    """
    graph = GoalGraph(
        (goal("g", '"g"', decomp, strengthened), goal("a", '"g1"'), goal("b", '"g2"')),
        {"g": ("a", "b")},
    )
    if shape == "positive":
        node_text = '"g"'
    elif shape == "negative":
        node_text = '!"g"'
    else:
        node_text = '!"g"' if decomp == "and" else '!"g"'
    if shape == "special":
        # The special case needs a node whose negation is the goal label,
        # so flip the goal label instead: goal is the negation of "n".
        graph = GoalGraph(
            (goal("g", '!"n"', decomp, strengthened), goal("a", '"g1"'), goal("b", '"g2"')),
            {"g": ("a", "b")},
        )
        node_text = '"n"'
    node = parse_expr(node_text)
    moves = match_goals(graph, node)
    if shape != "positive" and not strengthened:
        assert moves == []
        return
    assert moves, f"no moves for {decomp}/{strengthened}/{shape}"

    glabel = '!"n"' if shape == "special" else '"g"'
    combine = f'("g1" {"&" if decomp == "and" else "|"} "g2")'
    knowledge = f"({combine} -> {glabel})"
    if strengthened:
        knowledge += f' & ({glabel} -> {combine})'

    names = ["g", "g1", "g2"] if shape != "special" else ["n", "g1", "g2"]
    admissible = 0
    for values in itertools.product([False, True], repeat=3):
        assignment = dict(zip(names, values))
        if not _truth(knowledge, assignment):
            continue
        admissible += 1
        for move in moves:
            for child in move.results:
                if _truth(print_expr(child), assignment):
                    assert _truth(node_text, assignment), (
                        decomp,
                        strengthened,
                        shape,
                        assignment,
                        print_expr(child),
                    )
    assert admissible > 0


# -- phantom insertion -----------------------------------------------------


def test_insert_phantom_reproduces_revised_graph():
    fig3 = load_fig3()
    phantom = Goal("not-harm", parse_expr('!"harm"'), Decomposition.AND, strengthened=True)
    revised = insert_phantom(fig3, "support", phantom, ("keep-healthy", "keep-safe"))
    fig4 = load_fig4()
    assert revised.children == fig4.children
    assert {g.id for g in revised.goals} == {g.id for g in fig4.goals}
    inserted = revised.goal("not-harm")
    assert inserted.phantom and inserted.strengthened


def test_insert_phantom_empty_adoption():
    with pytest.raises(GoalError, match="at least one"):
        insert_phantom(load_fig3(), "support", goal("x", '"x"', "and"), ())


def test_insert_phantom_fresh_id_required():
    with pytest.raises(GoalError, match="already exists"):
        insert_phantom(load_fig3(), "support", goal("recharge", '"again"', "and"), ("keep-safe",))


def test_insert_phantom_adoptee_must_be_child():
    with pytest.raises(GoalError, match="not children"):
        insert_phantom(load_fig3(), "support", goal("x", '"x"', "and"), ("monitor",))


def test_insert_phantom_preserves_other_parents():
    shared = GoalGraph(
        (goal("p1", '"p1"', "and"), goal("p2", '"p2"', "and"), goal("c", '"c"')),
        {"p1": ("c",), "p2": ("c",)},
    )
    before = {(p, k) for p, kids in shared.children.items() for k in kids}
    out = insert_phantom(shared, "p1", goal("mid", '"mid"', "and"), ("c",))
    after = {(p, k) for p, kids in out.children.items() for k in kids}
    # Structural diff: only the p1->c edge is rerouted through mid.
    assert before - after == {("p1", "c")}
    assert after - before == {("p1", "mid"), ("mid", "c")}
    assert ("p2", "c") in after


def test_insert_phantom_keeps_graph_acyclic():
    fig3 = load_fig3()
    out = insert_phantom(fig3, "support", goal("mid", '"mid"', "and"), ("assist",))
    assert out.goal("mid")  # construction validates acyclicity
