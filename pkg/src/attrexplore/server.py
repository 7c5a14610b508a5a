"""HTTP wiring for sessions: four JSON endpoints over a session store.

Rejections come back as 4xx responses with a machine-readable reason code
(condition_i, condition_iii, consistency, stale_token) so a console can
render inline guidance. One writer per session; reads take snapshots.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import AnswerRejected, ExplorationError, SchemaError
from .journal import entry_to_dict
from .schema import ExplorationSchema, save_schema
from .session import Session, parse_answer, parse_examples


class SessionStore:
    """In-memory sessions backed by per-session journal files in one directory."""

    def __init__(self, journal_dir):
        self.journal_dir = Path(journal_dir)
        self.journal_dir.mkdir(parents=True, exist_ok=True)
        self.sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._store_lock = threading.Lock()

    def _paths(self, session_id: str) -> tuple[Path, Path]:
        return (
            self.journal_dir / f"{session_id}.journal.jsonl",
            self.journal_dir / f"{session_id}.schema.json",
        )

    def create(self, schema_doc: dict, examples_doc: list) -> Session:
        schema = ExplorationSchema.from_dict(schema_doc)
        examples = parse_examples(examples_doc, schema)
        with self._store_lock:
            session_id = f"s{len(self.sessions) + 1:04d}-{abs(hash(id(self))) % 10000:04d}"
            while session_id in self.sessions:
                session_id += "x"
            journal_path, schema_path = self._paths(session_id)
            session = Session.create(schema, examples, journal_path, session_id)
            save_schema(schema, schema_path)
            self.sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise KeyError(session_id) from None

    def lock(self, session_id: str) -> threading.Lock:
        return self._locks[session_id]

    def resume_all(self) -> int:
        """Rebuild every session whose journal and schema sit in the directory."""
        count = 0
        for journal_path in sorted(self.journal_dir.glob("*.journal.jsonl")):
            session_id = journal_path.name[: -len(".journal.jsonl")]
            schema_path = self.journal_dir / f"{session_id}.schema.json"
            if not schema_path.exists() or session_id in self.sessions:
                continue
            session = Session.resume(journal_path, schema_path, session_id)
            self.sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
            count += 1
        return count


def build_app(store: SessionStore) -> FastAPI:
    app = FastAPI(title="attrexplore session service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(AnswerRejected)
    def _rejected(_request, exc: AnswerRejected):
        status = 409 if exc.reason == "stale_token" else 422
        return JSONResponse(status_code=status, content={"reason": exc.reason, "detail": str(exc)})

    @app.exception_handler(SchemaError)
    def _bad_input(_request, exc: SchemaError):
        return JSONResponse(status_code=400, content={"reason": "bad_request", "detail": str(exc)})

    @app.exception_handler(ExplorationError)
    def _domain_error(_request, exc: ExplorationError):
        return JSONResponse(status_code=422, content={"reason": "rejected", "detail": str(exc)})

    @app.get("/health")
    def health():
        return {"ok": True, "sessions": len(store.sessions)}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        if "schema" not in body:
            raise SchemaError("request body needs a 'schema' object")
        session = store.create(body["schema"], body.get("examples", []))
        return session.state()

    @app.get("/sessions/{session_id}/state")
    def get_state(session_id: str):
        try:
            session = store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        return session.state()

    @app.post("/sessions/{session_id}/answer")
    def submit_answer(session_id: str, body: dict = Body(...)):
        try:
            session = store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        token = body.get("token", "")
        answer = parse_answer(body, session.schema)
        with store.lock(session_id):
            session.submit_answer(answer, token)
        return session.state()

    @app.get("/sessions/{session_id}/journal")
    def get_journal(
        session_id: str,
        offset: int = Query(0, ge=0),
        limit: int = Query(100, ge=1, le=1000),
    ):
        try:
            session = store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")
        entries = session.base.journal[offset : offset + limit]
        return {
            "total": len(session.base.journal),
            "offset": offset,
            "entries": [entry_to_dict(e, session.schema) for e in entries],
        }

    return app


def serve(port: int, journal_dir, host: str = "127.0.0.1") -> None:
    """Host the session endpoints until interrupted; resumes stored sessions."""
    import uvicorn

    store = SessionStore(journal_dir)
    resumed = store.resume_all()
    if resumed:
        print(f"resumed {resumed} session(s) from {journal_dir}")
    uvicorn.run(build_app(store), host=host, port=port, log_level="warning")
