"""Command-line driver for refinement sessions."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .engine import (
    CompletenessAnswer,
    EngineError,
    apply_move,
    add_session_rule,
    enumerate_moves,
    export_properties_text,
    export_report_text,
    formalize_in_place,
    frontier,
    init_session,
    insert_session_phantom,
    record_completeness,
    replay,
    session_hash,
)
from .goals import Decomposition, Goal, GoalError, parse_goal_graph
from .knowledge import KnowledgeError, parse_rules
from .logic import ParseError, parse_expr, print_expr
from .store import SessionStore, StoreError

ERRORS = (EngineError, GoalError, KnowledgeError, ParseError, StoreError)


def _store() -> SessionStore:
    return SessionStore.from_env()


def _load(session_file: str):
    return _store().load(session_file)


def _save(session_file: str, session) -> None:
    _store().save(session_file, session)


def _describe_move(index: int, move) -> str:
    children = "; ".join(print_expr(c) for c in move.children)
    place = "whole node" if move.occurrence is None else f"at {list(move.occurrence.path)}"
    return f"[{index}] case {move.case} {move.source} ({place}) -> {children}"


@click.group()
def main() -> None:
    """Derive verifiable properties from informal tenets."""


@main.command()
@click.option("--tenet", required=True, help="tenet text, e.g. 'do not harm'")
@click.option("--root", "root_expr", required=True, help="negated tenet in the expression grammar")
@click.option("--goals", "goals_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--rules", "rules_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "session_file", required=True)
def new(tenet: str, root_expr: str, goals_file: Path, rules_file: Path, session_file: str) -> None:
    """Start a session from a goal file and a rules file."""
    try:
        goals = parse_goal_graph(goals_file.read_text())
        kb = parse_rules(rules_file.read_text())
        session = init_session(tenet, parse_expr(root_expr), goals, kb)
        _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    click.echo(f"created {session_file} (root n1: {root_expr})")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--node", "node_id", required=True)
def moves(session_file: str, node_id: str) -> None:
    """List the moves available on an open leaf."""
    try:
        session = _load(session_file)
        palette = enumerate_moves(session, node_id)
    except ERRORS as err:
        raise click.ClickException(str(err))
    for index, move in enumerate(palette.moves):
        click.echo(_describe_move(index, move))
    if palette.formalizable_in_place:
        click.echo("[formalize] node is fully formal; `formalize` marks it done")
    if palette.needs_expansion:
        click.echo("no moves: expand the goal graph (phantom) or elicit a rule (rule-add)")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--node", "node_id", required=True)
@click.option("--move", "move_index", required=True, type=int)
def apply(session_file: str, node_id: str, move_index: int) -> None:
    """Apply a move by its index from `moves`."""
    try:
        session = _load(session_file)
        palette = enumerate_moves(session, node_id)
    except ERRORS as err:
        raise click.ClickException(str(err))
    if not 0 <= move_index < len(palette.moves):
        raise click.UsageError(
            f"move index {move_index} out of range (node has {len(palette.moves)} moves)"
        )
    try:
        session = apply_move(session, node_id, palette.moves[move_index])
        _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    node = session.tree.node(node_id)
    for child in node.children:
        click.echo(f"{child}: {print_expr(session.tree.node(child).expr)}")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--node", "node_id", required=True)
def formalize(session_file: str, node_id: str) -> None:
    """Mark an already-formal open leaf as formalized."""
    try:
        session = formalize_in_place(_load(session_file), node_id)
        _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    click.echo(f"{node_id} formalized")


@main.command("rule-add")
@click.option("--session", "session_file", required=True)
@click.option("--rule", "line", required=True, help="one rules-file line, e.g. 'd10: \"a\" => \"b\"'")
def rule_add(session_file: str, line: str) -> None:
    """Elicit an extra domain-knowledge rule into the session."""
    try:
        session = add_session_rule(_load(session_file), line)
        _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    click.echo("rule added")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--parent", required=True)
@click.option("--id", "goal_id", required=True)
@click.option("--label", required=True)
@click.option("--decomp", type=click.Choice(["and", "or"]), default="and", show_default=True)
@click.option("--strengthened/--no-strengthened", default=True, show_default=True)
@click.option("--adopt", required=True, help="comma-separated child ids to adopt")
def phantom(session_file: str, parent: str, goal_id: str, label: str, decomp: str,
            strengthened: bool, adopt: str) -> None:
    """Insert a phantom goal between a parent and some of its children."""
    adopted = tuple(a.strip() for a in adopt.split(",") if a.strip())
    try:
        goal = Goal(goal_id, parse_expr(label), Decomposition(decomp), strengthened)
        session = insert_session_phantom(_load(session_file), parent, goal, adopted)
        _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    click.echo(f"inserted {goal_id} under {parent}")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--node", "node_id", required=True)
@click.option("--answer", type=click.Choice(["c", "i"]), required=True)
@click.option("--why", default="", help="rationale (required for incomplete)")
def complete(session_file: str, node_id: str, answer: str, why: str) -> None:
    """Record the completeness judgment for a refined node."""
    verdict = CompletenessAnswer.COMPLETE if answer == "c" else CompletenessAnswer.INCOMPLETE
    try:
        session = record_completeness(_load(session_file), node_id, verdict, why)
        _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    click.echo(f"{node_id} marked {verdict.value}")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--format", "fmt", type=click.Choice(["props", "report"]), default="props",
              show_default=True)
def export(session_file: str, fmt: str) -> None:
    """Print the derived properties (or the JSON provenance report)."""
    try:
        session = _load(session_file)
        text = export_properties_text(session) if fmt == "props" else export_report_text(session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    sys.stdout.write(text)


@main.command("replay")
@click.option("--log", "log_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--goals", "goals_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--rules", "rules_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--out", "session_file", default=None, help="save the reconstructed session here")
def replay_cmd(log_file: Path, goals_file: Path, rules_file: Path, session_file: str | None) -> None:
    """Reconstruct a session from an event log."""
    try:
        log = json.loads(log_file.read_text())
        goals = parse_goal_graph(goals_file.read_text())
        kb = parse_rules(rules_file.read_text())
        session = replay(log, goals, kb)
        if session_file:
            _save(session_file, session)
    except ERRORS as err:
        raise click.ClickException(str(err))
    except json.JSONDecodeError as err:
        raise click.ClickException(f"log file is not valid JSON: {err}")
    click.echo(f"replayed {len(session.events)} events -> {len(session.tree.nodes)} nodes")
    click.echo(f"hash {session_hash(session)}")
    if session_file:
        click.echo(f"saved {session_file}")


@main.command()
@click.option("--session", "session_file", required=True)
@click.option("--port", default=8714, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(session_file: str, port: int, host: str) -> None:
    """Serve the HTTP API (and the UI, when built) for this session."""
    import uvicorn

    from .server import create_app

    try:
        app = create_app(session_file)
    except ERRORS as err:
        raise click.ClickException(str(err))
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--session", "session_file", required=True)
def status(session_file: str) -> None:
    """Show the open frontier and session hash."""
    try:
        session = _load(session_file)
    except ERRORS as err:
        raise click.ClickException(str(err))
    open_ids = frontier(session.tree)
    click.echo(f"tenet: {session.tenet}")
    click.echo(f"nodes: {len(session.tree.nodes)}, open: {len(open_ids)}")
    for node_id in open_ids:
        click.echo(f"  {node_id}: {print_expr(session.tree.node(node_id).expr)}")
    click.echo(f"hash {session_hash(session)}")


if __name__ == "__main__":
    main()
