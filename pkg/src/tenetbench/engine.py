"""Refinement tree, move enumeration and application, session log, replay.

A session starts from the negated tenet and grows a tree in which every
child's behaviour set is contained in its parent's.  Moves are offered
formalization first, then domain-knowledge rewrites, then goal-tree
refinements; when nothing applies the author expands the goal graph or
elicits a new rule.  Every mutation appends one event, and replaying the
event log against the same inputs reconstructs the session exactly.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, replace

from .goals import (
    Decomposition,
    Goal,
    GoalGraph,
    goal_graph_from_doc,
    goal_graph_to_doc,
    insert_phantom,
    match_goals,
)
from .knowledge import (
    DomainRule,
    FormalizationEntry,
    KnowledgeBase,
    MacroDef,
    RuleKind,
    add_rule,
    match_formalizations,
    match_rules,
    parse_rules,
)
from .logic import (
    And,
    Expr,
    Not,
    Occurrence,
    is_formal,
    negate_simplify,
    parse_expr,
    print_expr,
    replace_at,
    strip_double_negations,
)

FORMALIZE_CASE, RULE_CASE, GOAL_CASE = 0, 1, 2
FORMALIZE_TAG, GOAL_TAG = "f", "g"


class EngineError(ValueError):
    pass


class UnknownNodeError(EngineError):
    pass


class NotOpenLeafError(EngineError):
    pass


class StaleMoveError(EngineError):
    pass


class OpenLeavesError(EngineError):
    def __init__(self, open_ids: list[str]):
        super().__init__(f"open leaves remain: {', '.join(open_ids)}")
        self.open_ids = open_ids


class ReplayError(EngineError):
    pass


class NodeStatus(enum.Enum):
    OPEN = "open"
    FORMALIZED = "formalized"


class CompletenessAnswer(enum.Enum):
    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    UNREVIEWED = "unreviewed"


@dataclass(frozen=True)
class CompletenessRecord:
    answer: CompletenessAnswer
    rationale: str = ""

    def __post_init__(self) -> None:
        if self.answer is CompletenessAnswer.INCOMPLETE and not self.rationale.strip():
            raise EngineError("an incomplete verdict needs a rationale")


@dataclass(frozen=True)
class RefNode:
    id: str
    expr: Expr
    status: NodeStatus = NodeStatus.OPEN
    annotation: str | None = None
    parent: str | None = None
    children: tuple[str, ...] = ()
    completeness: CompletenessRecord | None = None


@dataclass(frozen=True)
class RefTree:
    nodes: dict[str, RefNode]
    root: str

    def node(self, node_id: str) -> RefNode:
        found = self.nodes.get(node_id)
        if found is None:
            raise UnknownNodeError(f"unknown node {node_id!r}")
        return found

    def document_order(self) -> list[str]:
        order: list[str] = []

        def visit(node_id: str) -> None:
            order.append(node_id)
            for kid in self.nodes[node_id].children:
                visit(kid)

        visit(self.root)
        return order

    def ancestors(self, node_id: str) -> list[RefNode]:
        """The node itself and everything up to the root."""
        chain = [self.node(node_id)]
        while chain[-1].parent is not None:
            chain.append(self.node(chain[-1].parent))
        return chain


@dataclass(frozen=True)
class Move:
    case: int
    source: str
    occurrence: Occurrence | None
    children: tuple[Expr, ...]
    annotation: str

    def matches_event(self, case: int, source: str, path: list[int] | None) -> bool:
        own_path = None if self.occurrence is None else list(self.occurrence.path)
        return self.case == case and self.source == source and own_path == path


@dataclass(frozen=True)
class MovePalette:
    moves: tuple[Move, ...]
    formalizable_in_place: bool

    @property
    def needs_expansion(self) -> bool:
        """Nothing applies; the author should add a goal (3a) or a rule (3b)."""
        return not self.moves and not self.formalizable_in_place


@dataclass(frozen=True)
class Session:
    tenet: str
    kb: KnowledgeBase
    goals: GoalGraph
    tree: RefTree
    events: tuple[dict, ...] = ()
    counter: int = 1


def init_session(tenet: str, root_expr: Expr, goals: GoalGraph, kb: KnowledgeBase) -> Session:
    """Fresh session whose single open root carries the negated tenet."""
    if not tenet.strip():
        raise EngineError("tenet text is empty")
    root = RefNode("n1", root_expr)
    return Session(tenet.strip(), kb, goals, RefTree({root.id: root}, root.id), (), 2)


def frontier(tree: RefTree) -> list[str]:
    return [
        node_id
        for node_id in tree.document_order()
        if not tree.nodes[node_id].children and tree.nodes[node_id].status is NodeStatus.OPEN
    ]


def _split_negated_conjunction(result: Expr) -> tuple[Expr, ...]:
    cleaned = strip_double_negations(result)
    if isinstance(cleaned, Not) and isinstance(cleaned.body, And):
        return tuple(strip_double_negations(Not(item)) for item in cleaned.body.items)
    return (cleaned,)


def _require_open_leaf(session: Session, node_id: str) -> RefNode:
    node = session.tree.node(node_id)
    if node.children:
        raise NotOpenLeafError(f"node {node_id} is already refined")
    if node.status is not NodeStatus.OPEN:
        raise NotOpenLeafError(f"node {node_id} is already formalized")
    return node


def enumerate_moves(session: Session, node_id: str) -> MovePalette:
    """Available moves, formalization first, then rules, then goals.

    A move is suppressed when one of its children reproduces the node or
    any ancestor (definitions applied in a loop).  Pure function of the
    session state and node id.
    """
    node = _require_open_leaf(session, node_id)
    ancestor_exprs = [a.expr for a in session.tree.ancestors(node_id)]
    moves: list[Move] = []
    for case0 in match_formalizations(session.kb, node.expr):
        moves.append(Move(FORMALIZE_CASE, FORMALIZE_TAG, None, (case0.result,), FORMALIZE_TAG))
    for case1 in match_rules(session.kb, node.expr):
        rewritten = replace_at(node.expr, case1.occurrence.path, case1.replacement)
        children = _split_negated_conjunction(rewritten)
        moves.append(Move(RULE_CASE, case1.rule.id, case1.occurrence, children, case1.rule.id))
    for case2 in match_goals(session.goals, node.expr):
        children = tuple(
            part for result in case2.results for part in _split_negated_conjunction(result)
        )
        moves.append(Move(GOAL_CASE, case2.goal.id, case2.occurrence, children, GOAL_TAG))
    moves = [
        m for m in moves if not any(child in ancestor_exprs for child in m.children)
    ]
    formalizable = is_formal(node.expr, session.kb.macro_names())
    return MovePalette(tuple(moves), formalizable)


def _with_node(tree: RefTree, node: RefNode) -> RefTree:
    nodes = dict(tree.nodes)
    nodes[node.id] = node
    return RefTree(nodes, tree.root)


def apply_move(session: Session, node_id: str, move: Move) -> Session:
    """Attach the move's children and record provenance.

    The move must still be offered by enumerate_moves on the current
    state; anything else is stale and rejected without partial effects.
    """
    palette = enumerate_moves(session, node_id)
    if move not in palette.moves:
        raise StaleMoveError(f"move is stale for node {node_id}")
    node = session.tree.node(node_id)
    nodes = dict(session.tree.nodes)
    counter = session.counter
    child_ids = []
    for child_expr in move.children:
        child_id = f"n{counter}"
        counter += 1
        status = NodeStatus.FORMALIZED if move.case == FORMALIZE_CASE else NodeStatus.OPEN
        nodes[child_id] = RefNode(child_id, child_expr, status, parent=node_id)
        child_ids.append(child_id)
    completeness = node.completeness
    if move.case == RULE_CASE and session.kb.rule(move.source).kind is RuleKind.DEFINITION:
        completeness = CompletenessRecord(
            CompletenessAnswer.COMPLETE, f"definition {move.source} is complete by construction"
        )
    nodes[node_id] = replace(
        node, annotation=move.annotation, children=tuple(child_ids), completeness=completeness
    )
    event = {
        "type": "apply_move",
        "node": node_id,
        "case": move.case,
        "source": move.source,
        "path": None if move.occurrence is None else list(move.occurrence.path),
        "children": [print_expr(c) for c in move.children],
    }
    return replace(
        session,
        tree=RefTree(nodes, session.tree.root),
        events=session.events + (event,),
        counter=counter,
    )


def formalize_in_place(session: Session, node_id: str) -> Session:
    """Mark an already-formal open leaf as formalized (no new child)."""
    node = _require_open_leaf(session, node_id)
    if not is_formal(node.expr, session.kb.macro_names()):
        raise EngineError(f"node {node_id} still contains informal atoms")
    tree = _with_node(session.tree, replace(node, status=NodeStatus.FORMALIZED))
    event = {"type": "formalize", "node": node_id}
    return replace(session, tree=tree, events=session.events + (event,))


def record_completeness(
    session: Session, node_id: str, answer: CompletenessAnswer, rationale: str = ""
) -> Session:
    node = session.tree.node(node_id)
    if not node.children:
        raise EngineError(f"node {node_id} has no refinements to judge")
    record = CompletenessRecord(answer, rationale)
    tree = _with_node(session.tree, replace(node, completeness=record))
    event = {
        "type": "record_completeness",
        "node": node_id,
        "answer": answer.value,
        "rationale": rationale,
    }
    return replace(session, tree=tree, events=session.events + (event,))


def add_session_rule(session: Session, line: str) -> Session:
    """Case 3b: elicit one more domain-knowledge rule."""
    parsed = parse_rules(line)
    if len(parsed.rules) != 1 or parsed.macros or parsed.formalizations:
        raise EngineError("expected exactly one rule declaration")
    kb = add_rule(session.kb, parsed.rules[0])
    event = {"type": "add_rule", "line": line.strip()}
    return replace(session, kb=kb, events=session.events + (event,))


def insert_session_phantom(
    session: Session, parent_id: str, goal: Goal, adopted: tuple[str, ...]
) -> Session:
    """Case 3a: add an intermediate goal to the goal graph."""
    goals = insert_phantom(session.goals, parent_id, goal, adopted)
    event = {
        "type": "insert_phantom",
        "parent": parent_id,
        "goal": {
            "id": goal.id,
            "label": print_expr(goal.label),
            "decomp": goal.decomp.value,
            "strengthened": goal.strengthened,
        },
        "adopt": list(adopted),
    }
    return replace(session, goals=goals, events=session.events + (event,))


def collect_properties(session: Session) -> list[Expr]:
    """Negations of the formalized leaves, in document order."""
    open_ids = frontier(session.tree)
    if open_ids:
        raise OpenLeavesError(open_ids)
    leaves = [
        session.tree.nodes[node_id]
        for node_id in session.tree.document_order()
        if not session.tree.nodes[node_id].children
    ]
    return [negate_simplify(leaf.expr) for leaf in leaves]


# -- serialization and hashing --------------------------------------------


def kb_to_doc(kb: KnowledgeBase) -> dict:
    return {
        "rules": [
            {
                "id": r.id,
                "kind": r.kind.value,
                "lhs": print_expr(r.lhs),
                "rhs": print_expr(r.rhs),
                "note": r.note,
            }
            for r in kb.rules
        ],
        "macros": [
            {"name": m.name, "params": list(m.params), "body": print_expr(m.body)}
            for m in kb.macros
        ],
        "formalizations": [
            {
                "pattern": print_expr(f.pattern),
                "template": print_expr(f.template),
                "guard": [[var, sorted(allowed)] for var, allowed in f.guard],
            }
            for f in kb.formalizations
        ],
    }


def kb_from_doc(doc: dict) -> KnowledgeBase:
    return KnowledgeBase(
        tuple(
            DomainRule(
                r["id"], RuleKind(r["kind"]), parse_expr(r["lhs"]), parse_expr(r["rhs"]), r.get("note")
            )
            for r in doc.get("rules", ())
        ),
        tuple(
            FormalizationEntry(
                parse_expr(f["pattern"]),
                parse_expr(f["template"]),
                tuple((var, frozenset(allowed)) for var, allowed in f.get("guard", ())),
            )
            for f in doc.get("formalizations", ())
        ),
        tuple(
            MacroDef(m["name"], tuple(m.get("params", ())), parse_expr(m["body"]))
            for m in doc.get("macros", ())
        ),
    )


def session_to_doc(session: Session) -> dict:
    tree = session.tree
    return {
        "tenet": session.tenet,
        "kb": kb_to_doc(session.kb),
        "goals": goal_graph_to_doc(session.goals),
        "tree": {
            "root": tree.root,
            "nodes": [
                {
                    "id": n.id,
                    "expr": print_expr(n.expr),
                    "status": n.status.value,
                    "annotation": n.annotation,
                    "parent": n.parent,
                    "children": list(n.children),
                    "completeness": None
                    if n.completeness is None
                    else {"answer": n.completeness.answer.value, "rationale": n.completeness.rationale},
                }
                for n in (tree.nodes[i] for i in tree.document_order())
            ],
        },
        "events": list(session.events),
        "counter": session.counter,
    }


def session_from_doc(doc: dict) -> Session:
    nodes = {}
    for entry in doc["tree"]["nodes"]:
        record = entry.get("completeness")
        nodes[entry["id"]] = RefNode(
            entry["id"],
            parse_expr(entry["expr"]),
            NodeStatus(entry["status"]),
            entry.get("annotation"),
            entry.get("parent"),
            tuple(entry.get("children", ())),
            None
            if record is None
            else CompletenessRecord(CompletenessAnswer(record["answer"]), record.get("rationale", "")),
        )
    return Session(
        doc["tenet"],
        kb_from_doc(doc["kb"]),
        goal_graph_from_doc(doc["goals"]),
        RefTree(nodes, doc["tree"]["root"]),
        tuple(doc.get("events", ())),
        doc.get("counter", len(nodes) + 1),
    )


def session_hash(session: Session) -> str:
    payload = json.dumps(session_to_doc(session), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


# -- exports ----------------------------------------------------------------


def export_properties_text(session: Session) -> str:
    return "".join(print_expr(p) + "\n" for p in collect_properties(session))


def export_report(session: Session) -> dict:
    properties = collect_properties(session)
    tree = session.tree
    leaves = [i for i in tree.document_order() if not tree.nodes[i].children]
    chains = []
    for leaf_id, prop in zip(leaves, properties):
        chain = [
            {
                "node": n.id,
                "expr": print_expr(n.expr),
                "annotation": n.annotation,
            }
            for n in reversed(tree.ancestors(leaf_id))
        ]
        chains.append({"property": print_expr(prop), "leaf": leaf_id, "provenance": chain})
    residual = [
        {
            "node": n.id,
            "expr": print_expr(n.expr),
            "rationale": n.completeness.rationale,
        }
        for i in tree.document_order()
        for n in [tree.nodes[i]]
        if n.completeness is not None and n.completeness.answer is CompletenessAnswer.INCOMPLETE
    ]
    notes = [
        f"node {e['node']}: the rewrite by {e['source']} produced a negated conjunction "
        f"that was split into {len(e['children'])} sub-nodes in the same step"
        for e in session.events
        if e["type"] == "apply_move" and e["case"] == RULE_CASE and len(e["children"]) > 1
    ]
    return {
        "tenet": session.tenet,
        "hash": session_hash(session),
        "properties": chains,
        "residual_risks": residual,
        "notes": notes,
    }


def export_report_text(session: Session) -> str:
    return json.dumps(export_report(session), indent=2, sort_keys=False) + "\n"


# -- replay ------------------------------------------------------------------


def replay(log: dict, goals: GoalGraph, kb: KnowledgeBase) -> Session:
    """Deterministically reconstruct a session from its event log."""
    try:
        session = init_session(log["tenet"], parse_expr(log["root"]), goals, kb)
    except KeyError as err:
        raise ReplayError(f"log is missing {err}") from err
    for index, event in enumerate(log.get("events", ())):
        try:
            session = _replay_event(session, event)
        except EngineError as err:
            raise ReplayError(f"event {index} ({event.get('type')}) is inapplicable: {err}") from err
    expected = log.get("final_hash")
    if expected is not None:
        actual = session_hash(session)
        if actual != expected:
            raise ReplayError(f"reconstructed hash {actual} does not match logged {expected}")
    return session


def _replay_event(session: Session, event: dict) -> Session:
    kind = event.get("type")
    if kind == "apply_move":
        palette = enumerate_moves(session, event["node"])
        wanted = [
            m
            for m in palette.moves
            if m.matches_event(event["case"], event["source"], event["path"])
        ]
        if len(wanted) > 1 and "children" in event:
            wanted = [
                m for m in wanted if [print_expr(c) for c in m.children] == event["children"]
            ]
        if not wanted:
            raise StaleMoveError(
                f"no move with case={event['case']} source={event['source']} path={event['path']}"
            )
        return apply_move(session, event["node"], wanted[0])
    if kind == "formalize":
        return formalize_in_place(session, event["node"])
    if kind == "add_rule":
        return add_session_rule(session, event["line"])
    if kind == "insert_phantom":
        entry = event["goal"]
        goal = Goal(
            entry["id"],
            parse_expr(entry["label"]),
            Decomposition(entry["decomp"]),
            bool(entry.get("strengthened", False)),
        )
        return insert_session_phantom(session, event["parent"], goal, tuple(event["adopt"]))
    if kind == "record_completeness":
        return record_completeness(
            session, event["node"], CompletenessAnswer(event["answer"]), event.get("rationale", "")
        )
    raise ReplayError(f"unknown event type {kind!r}")
