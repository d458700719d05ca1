"""HTTP workbench for hand-editing witness colorings.

Sessions live in memory with TTL eviction; every response's report is a
from-scratch verification of the session coloring, so the client never has
to reconcile incremental state.  Requests touching the same session are
serialized by a per-session lock.

Endpoints (JSON unless noted):
  POST /sessions                      {text, s, t, format?} -> session + report
  GET  /sessions/{id}                 session state (triangle-encoded colors)
  POST /sessions/{id}/flip            {i, j} -> updated report
  POST /sessions/{id}/undo            revert last flip -> report
  GET  /sessions/{id}/violations      ?limit=N -> report with up to N cliques/color
  GET  /sessions/{id}/export          ?format=adj|tri -> text/plain
Field names are documented in docs/api.md.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .cliques import enumerate_violations
from .colorings import (
    EdgeColoring,
    emit_adjacency_list,
    emit_triangle_matrix,
    flip_edge,
    parse_adjacency_list,
    parse_triangle_matrix,
)
from .errors import DomainError, IncompleteColoringError, ParseError

DEFAULT_VIOLATION_LIMIT = 50
DEFAULT_TTL_SECONDS = 24 * 3600


class CreateSession(BaseModel):
    text: str
    s: int
    t: int
    format: str = "auto"  # "adj" | "tri" | "auto"


class FlipRequest(BaseModel):
    i: int
    j: int


@dataclass
class Session:
    id: str
    coloring: EdgeColoring
    original_text: str
    original_format: str
    s: int
    t: int
    undo: list[tuple[int, int]] = field(default_factory=list)
    created: float = field(default_factory=time.time)
    modified: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def add(self, session: Session) -> None:
        with self._lock:
            self._evict()
            self._sessions[session.id] = session

    def get(self, sid: str) -> Session:
        with self._lock:
            self._evict()
            try:
                return self._sessions[sid]
            except KeyError:
                raise HTTPException(status_code=404, detail=f"unknown session {sid}")

    def _evict(self) -> None:
        cutoff = time.time() - self.ttl
        stale = [sid for sid, s in self._sessions.items() if s.modified < cutoff]
        for sid in stale:
            del self._sessions[sid]


def detect_format(text: str, fmt: str = "auto") -> str:
    if fmt != "auto":
        return fmt
    first = text.splitlines()[0] if text.splitlines() else ""
    return "adj" if ":" in first else "tri"


def _parse_body(text: str, fmt: str) -> tuple[EdgeColoring, str]:
    fmt = detect_format(text, fmt)
    if fmt not in ("adj", "tri"):
        raise HTTPException(status_code=400, detail=f"unknown format {fmt!r}")
    try:
        parse = parse_adjacency_list if fmt == "adj" else parse_triangle_matrix
        return parse(text), fmt
    except ParseError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def create_app(
    ttl_seconds: float = DEFAULT_TTL_SECONDS,
    violation_limit: int = DEFAULT_VIOLATION_LIMIT,
) -> FastAPI:
    app = FastAPI(title="ramseykit edit service")
    store = SessionStore(ttl_seconds)
    app.state.store = store

    def report_payload(session: Session, limit: int | None = None) -> dict:
        return enumerate_violations(
            session.coloring, session.s, session.t, limit or violation_limit
        ).to_dict()

    def session_payload(session: Session) -> dict:
        return {
            "id": session.id,
            "n": session.coloring.n,
            "s": session.s,
            "t": session.t,
            "triangle": emit_triangle_matrix(session.coloring),
            "undo_depth": len(session.undo),
            "created": session.created,
            "modified": session.modified,
        }

    @app.post("/sessions")
    def create_session(body: CreateSession):
        if body.s < 1 or body.t < 1:
            raise HTTPException(status_code=400, detail="s and t must be >= 1")
        coloring, fmt = _parse_body(body.text, body.format)
        if not coloring.is_total:
            raise HTTPException(
                status_code=422,
                detail=f"coloring has {coloring.undecided_count} undecided edges",
            )
        session = Session(
            id=uuid.uuid4().hex,
            coloring=coloring,
            original_text=body.text,
            original_format=fmt,
            s=body.s,
            t=body.t,
        )
        store.add(session)
        return {"session": session_payload(session), "report": report_payload(session)}

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        session = store.get(sid)
        with session.lock:
            return {"session": session_payload(session), "report": report_payload(session)}

    @app.post("/sessions/{sid}/flip")
    def flip(sid: str, body: FlipRequest):
        session = store.get(sid)
        with session.lock:
            try:
                session.coloring = flip_edge(session.coloring, body.i, body.j)
            except (DomainError, IncompleteColoringError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            session.undo.append((body.i, body.j))
            session.modified = time.time()
            return {"session": session_payload(session), "report": report_payload(session)}

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        session = store.get(sid)
        with session.lock:
            if not session.undo:
                raise HTTPException(status_code=409, detail="undo stack is empty")
            i, j = session.undo.pop()
            session.coloring = flip_edge(session.coloring, i, j)
            session.modified = time.time()
            return {"session": session_payload(session), "report": report_payload(session)}

    @app.get("/sessions/{sid}/violations")
    def violations(sid: str, limit: int = DEFAULT_VIOLATION_LIMIT):
        session = store.get(sid)
        if limit < 1:
            raise HTTPException(status_code=400, detail="limit must be >= 1")
        with session.lock:
            return report_payload(session, limit)

    @app.get("/sessions/{sid}/export")
    def export(sid: str, format: str = "adj"):
        session = store.get(sid)
        with session.lock:
            if format not in ("adj", "tri"):
                raise HTTPException(status_code=400, detail=f"unknown format {format!r}")
            if not session.undo and format == session.original_format:
                # an untouched session exports its input verbatim
                return PlainTextResponse(session.original_text)
            emit = emit_adjacency_list if format == "adj" else emit_triangle_matrix
            return PlainTextResponse(emit(session.coloring))

    return app
