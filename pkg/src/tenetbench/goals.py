"""AND/OR goal graph with strengthened decompositions and phantom insertion.

Goal files are JSON arrays of
{id, label, decomp: "and"|"or"|"leaf", strengthened, phantom, children}.
Labels are expressions in the ASCII grammar so a phantom goal like the
negation of "harm" is representable directly.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, replace

from .logic import (
    And,
    Expr,
    Occurrence,
    Or,
    Polarity,
    find_occurrences,
    negate_simplify,
    parse_expr,
    print_expr,
    replace_at,
    unify,
)


class GoalError(ValueError):
    pass


class Decomposition(enum.Enum):
    AND = "and"
    OR = "or"
    LEAF = "leaf"


@dataclass(frozen=True)
class Goal:
    id: str
    label: Expr
    decomp: Decomposition = Decomposition.LEAF
    strengthened: bool = False
    phantom: bool = False


@dataclass(frozen=True)
class GoalGraph:
    goals: tuple[Goal, ...]
    children: dict[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        ids = [g.id for g in self.goals]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise GoalError(f"duplicate goal ids: {dupes}")
        known = set(ids)
        for parent, kids in self.children.items():
            if parent not in known:
                raise GoalError(f"edge from unknown goal {parent!r}")
            for kid in kids:
                if kid not in known:
                    raise GoalError(f"edge to unknown goal {kid!r} from {parent!r}")
        for goal in self.goals:
            kids = self.children.get(goal.id, ())
            if goal.decomp is Decomposition.LEAF and kids:
                raise GoalError(f"leaf goal {goal.id!r} has children")
            if goal.decomp is not Decomposition.LEAF and not kids:
                raise GoalError(f"{goal.decomp.value}-goal {goal.id!r} has no children")
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        WHITE, GREY, BLACK = 0, 1, 2
        colour = {g.id: WHITE for g in self.goals}

        def visit(node: str, trail: tuple[str, ...]) -> None:
            colour[node] = GREY
            for kid in self.children.get(node, ()):
                if colour[kid] == GREY:
                    raise GoalError(f"cycle detected through {kid!r}")
                if colour[kid] == WHITE:
                    visit(kid, trail + (kid,))
            colour[node] = BLACK

        for goal in self.goals:
            if colour[goal.id] == WHITE:
                visit(goal.id, (goal.id,))

    def goal(self, goal_id: str) -> Goal:
        for g in self.goals:
            if g.id == goal_id:
                return g
        raise GoalError(f"unknown goal {goal_id!r}")

    def roots(self) -> tuple[str, ...]:
        referenced = {kid for kids in self.children.values() for kid in kids}
        return tuple(g.id for g in self.goals if g.id not in referenced)

    def children_of(self, goal_id: str) -> tuple[Goal, ...]:
        return tuple(self.goal(k) for k in self.children.get(goal_id, ()))


@dataclass(frozen=True)
class ImpliedRule:
    """Reading of one goal decomposition as [](lhs -> rhs)."""

    goal_id: str
    direction: str  # "forward" (children imply goal) or "reverse" (strengthened)
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Case2Move:
    """A goal-tree refinement producing one or more replacement node forms."""

    goal: Goal
    occurrence: Occurrence | None  # None for the whole-node special case
    results: tuple[Expr, ...]


def _combine(decomp: Decomposition, labels: tuple[Expr, ...]) -> Expr:
    if len(labels) == 1:
        return labels[0]
    return And(labels) if decomp is Decomposition.AND else Or(labels)


def implied_rules(graph: GoalGraph, goal_id: str) -> list[ImpliedRule]:
    """Domain knowledge implied by one decomposition (reverse when strengthened)."""
    goal = graph.goal(goal_id)
    kids = graph.children_of(goal_id)
    if not kids:
        raise GoalError(f"goal {goal_id!r} has no children")
    labels = tuple(k.label for k in kids)
    rules: list[ImpliedRule] = []
    if goal.decomp is Decomposition.OR:
        for kid in kids:
            rules.append(ImpliedRule(goal_id, "forward", kid.label, goal.label))
    else:
        rules.append(ImpliedRule(goal_id, "forward", _combine(goal.decomp, labels), goal.label))
    if goal.strengthened:
        rules.append(ImpliedRule(goal_id, "reverse", goal.label, _combine(goal.decomp, labels)))
    return rules


def match_goals(graph: GoalGraph, node: Expr) -> list[Case2Move]:
    """Goal-tree refinements available on `node`.

    Positive occurrences of a goal label refine the goal into its children
    (one move per child for OR, the conjunction for AND).  Negative
    occurrences need a strengthened decomposition: the label is replaced by
    the child disjunction (OR) or split over the children (AND).  When the
    negation of the whole node unifies with a strengthened goal's label the
    node itself is replaced by the negated child combination.
    """
    moves: list[Case2Move] = []
    for goal in graph.goals:
        kids = graph.children_of(goal.id)
        if not kids:
            continue
        labels = tuple(k.label for k in kids)
        occurrences = find_occurrences(node, goal.label)
        for occ in occurrences:
            instantiate = lambda label: replace_at(node, occ.path, label)  # noqa: E731
            if occ.polarity is Polarity.POSITIVE:
                if goal.decomp is Decomposition.OR:
                    for label in labels:
                        moves.append(Case2Move(goal, occ, (instantiate(label),)))
                else:
                    moves.append(Case2Move(goal, occ, (instantiate(_combine(goal.decomp, labels)),)))
            elif goal.strengthened:
                if goal.decomp is Decomposition.OR:
                    moves.append(Case2Move(goal, occ, (instantiate(_combine(goal.decomp, labels)),)))
                else:
                    moves.append(Case2Move(goal, occ, tuple(instantiate(label) for label in labels)))
        if not occurrences and goal.strengthened:
            # Special case: the node is itself the negation of the goal.
            negated = negate_simplify(node)
            if unify(negated, goal.label) is not None:
                if goal.decomp is Decomposition.AND:
                    results = tuple(negate_simplify(label) for label in labels)
                else:
                    results = (negate_simplify(_combine(goal.decomp, labels)),)
                moves.append(Case2Move(goal, None, results))
    return moves


def insert_phantom(
    graph: GoalGraph, parent_id: str, new: Goal, adopted: tuple[str, ...]
) -> GoalGraph:
    """Insert `new` between `parent_id` and the adopted children.

    Adopted children keep their other parents; the new goal is always
    marked phantom and takes the slot of the first adopted child.
    """
    if not adopted:
        raise GoalError("phantom goal must adopt at least one child")
    if any(g.id == new.id for g in graph.goals):
        raise GoalError(f"goal id {new.id!r} already exists")
    current = graph.children.get(parent_id, ())
    graph.goal(parent_id)
    missing = [kid for kid in adopted if kid not in current]
    if missing:
        raise GoalError(f"adopted goals {missing} are not children of {parent_id!r}")
    slot = min(current.index(kid) for kid in adopted)
    remaining = [kid for kid in current if kid not in adopted]
    remaining.insert(slot, new.id)
    children = dict(graph.children)
    children[parent_id] = tuple(remaining)
    children[new.id] = tuple(adopted)
    return GoalGraph(graph.goals + (replace(new, phantom=True),), children)


# -- goal files ----------------------------------------------------------


def goal_graph_from_doc(doc: list[dict]) -> GoalGraph:
    goals = []
    children = {}
    for entry in doc:
        try:
            goal = Goal(
                id=entry["id"],
                label=parse_expr(entry["label"]),
                decomp=Decomposition(entry.get("decomp", "leaf")),
                strengthened=bool(entry.get("strengthened", False)),
                phantom=bool(entry.get("phantom", False)),
            )
        except (KeyError, ValueError) as err:
            raise GoalError(f"malformed goal entry {entry!r}: {err}") from err
        goals.append(goal)
        kids = tuple(entry.get("children", ()))
        if kids:
            children[goal.id] = kids
    return GoalGraph(tuple(goals), children)


def goal_graph_to_doc(graph: GoalGraph) -> list[dict]:
    return [
        {
            "id": g.id,
            "label": print_expr(g.label),
            "decomp": g.decomp.value,
            "strengthened": g.strengthened,
            "phantom": g.phantom,
            "children": list(graph.children.get(g.id, ())),
        }
        for g in graph.goals
    ]


def parse_goal_graph(text: str) -> GoalGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise GoalError(f"goal file is not valid JSON: {err}") from err
    if not isinstance(doc, list):
        raise GoalError("goal file must be a JSON array of goals")
    return goal_graph_from_doc(doc)
