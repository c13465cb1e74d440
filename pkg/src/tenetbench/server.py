"""HTTP API exposing one session to the browser workbench.

All mutations carry the client's expectedHash and fail with 409 when the
session moved on; mutations are serialized through a single lock and
saved atomically before the new state becomes visible.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .engine import (
    CompletenessAnswer,
    EngineError,
    Move,
    UnknownNodeError,
    add_session_rule,
    apply_move,
    enumerate_moves,
    export_properties_text,
    export_report_text,
    formalize_in_place,
    frontier,
    insert_session_phantom,
    kb_to_doc,
    record_completeness,
    session_hash,
)
from .goals import Decomposition, Goal, GoalError, goal_graph_to_doc
from .knowledge import KnowledgeError
from .logic import ParseError, parse_expr, print_expr
from .store import SessionStore


class ApplyBody(BaseModel):
    moveIndex: int
    expectedHash: str


class HashedBody(BaseModel):
    expectedHash: str


class RuleBody(BaseModel):
    line: str
    expectedHash: str


class PhantomGoalBody(BaseModel):
    id: str
    label: str
    decomp: str = "and"
    strengthened: bool = True


class PhantomBody(BaseModel):
    parent: str
    goal: PhantomGoalBody
    adopt: list[str] = Field(min_length=1)
    expectedHash: str


class CompletenessBody(BaseModel):
    answer: str
    rationale: str = ""
    expectedHash: str


def _move_payload(index: int, move: Move) -> dict:
    return {
        "index": index,
        "case": move.case,
        "source": move.source,
        "path": None if move.occurrence is None else list(move.occurrence.path),
        "children": [print_expr(c) for c in move.children],
        "annotation": move.annotation,
    }


def create_app(session_file: str, static_dir: Path | None = None) -> FastAPI:
    store = SessionStore.from_env()
    state = {"session": store.load(session_file)}
    lock = threading.Lock()

    app = FastAPI(title="tenetbench", docs_url=None, redoc_url=None)

    def current():
        return state["session"]

    def mutate(expected_hash: str, operation):
        with lock:
            session = state["session"]
            if expected_hash != session_hash(session):
                raise HTTPException(status_code=409, detail="session has changed; refetch")
            try:
                updated = operation(session)
            except UnknownNodeError as err:
                raise HTTPException(status_code=404, detail=str(err))
            except (EngineError, GoalError, KnowledgeError, ParseError) as err:
                raise HTTPException(status_code=422, detail=str(err))
            store.save(session_file, updated)
            state["session"] = updated
            return updated

    @app.get("/api/session")
    def get_session():
        session = current()
        tree = session.tree
        return {
            "tenet": session.tenet,
            "hash": session_hash(session),
            "root": tree.root,
            "nodeCount": len(tree.nodes),
            "openLeaves": frontier(tree),
            "kb": kb_to_doc(session.kb),
            "goals": goal_graph_to_doc(session.goals),
            "goalRoots": list(session.goals.roots()),
        }

    @app.get("/api/tree")
    def get_tree():
        session = current()
        tree = session.tree
        return {
            "hash": session_hash(session),
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
                    else {
                        "answer": n.completeness.answer.value,
                        "rationale": n.completeness.rationale,
                    },
                }
                for n in (tree.nodes[i] for i in tree.document_order())
            ],
        }

    @app.get("/api/nodes/{node_id}/moves")
    def get_moves(node_id: str):
        session = current()
        try:
            palette = enumerate_moves(session, node_id)
        except UnknownNodeError as err:
            raise HTTPException(status_code=404, detail=str(err))
        except EngineError as err:
            raise HTTPException(status_code=422, detail=str(err))
        return {
            "node": node_id,
            "hash": session_hash(session),
            "moves": [_move_payload(i, m) for i, m in enumerate(palette.moves)],
            "needsExpansion": palette.needs_expansion,
            "formalizable": palette.formalizable_in_place,
        }

    @app.post("/api/nodes/{node_id}/apply")
    def post_apply(node_id: str, body: ApplyBody):
        def operation(session):
            palette = enumerate_moves(session, node_id)
            if not 0 <= body.moveIndex < len(palette.moves):
                raise EngineError(f"move index {body.moveIndex} out of range")
            return apply_move(session, node_id, palette.moves[body.moveIndex])

        updated = mutate(body.expectedHash, operation)
        return {"hash": session_hash(updated), "node": node_id,
                "children": list(updated.tree.node(node_id).children)}

    @app.post("/api/nodes/{node_id}/formalize")
    def post_formalize(node_id: str, body: HashedBody):
        updated = mutate(body.expectedHash, lambda s: formalize_in_place(s, node_id))
        return {"hash": session_hash(updated), "node": node_id}

    @app.post("/api/nodes/{node_id}/completeness")
    def post_completeness(node_id: str, body: CompletenessBody):
        try:
            answer = CompletenessAnswer(body.answer)
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown answer {body.answer!r}")

        updated = mutate(
            body.expectedHash, lambda s: record_completeness(s, node_id, answer, body.rationale)
        )
        return {"hash": session_hash(updated), "node": node_id}

    @app.post("/api/rules")
    def post_rule(body: RuleBody):
        updated = mutate(body.expectedHash, lambda s: add_session_rule(s, body.line))
        return {"hash": session_hash(updated), "kb": kb_to_doc(updated.kb)}

    @app.post("/api/goals/phantom")
    def post_phantom(body: PhantomBody):
        def operation(session):
            goal = Goal(
                body.goal.id,
                parse_expr(body.goal.label),
                Decomposition(body.goal.decomp),
                body.goal.strengthened,
            )
            return insert_session_phantom(session, body.parent, goal, tuple(body.adopt))

        updated = mutate(body.expectedHash, operation)
        return {"hash": session_hash(updated), "goals": goal_graph_to_doc(updated.goals)}

    @app.get("/api/export")
    def get_export(format: str = Query("props", pattern="^(props|report)$")):
        session = current()
        try:
            if format == "props":
                return PlainTextResponse(export_properties_text(session))
            return PlainTextResponse(export_report_text(session), media_type="application/json")
        except EngineError as err:
            raise HTTPException(status_code=422, detail=str(err))

    @app.exception_handler(EngineError)
    def engine_error(_, err: EngineError):
        return JSONResponse(status_code=422, content={"detail": str(err)})

    if static_dir is None:
        candidate = Path.cwd() / "frontend" / "dist"
        static_dir = candidate if candidate.is_dir() else None
    if static_dir is not None and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
