"""Turn-based game sessions over a JSON HTTP API.

A client plays Ben; Ann's replies are computed synchronously inside the
move request, so a session is only ever waiting for Ben or finished.  A
square of period >= 2 finishes the session with reason strategy-falsified
and the full trace is preserved (and written to disk when a trace
directory is configured).
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import secrets
import threading
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import arena
from .detector import IncrementalChecker, near_square_threat
from .errors import DivergenceError, InvalidLetter, ParseError
from .strategy import AnnState, initial_state, respond
from .words import Letter, Mode, parse_letter

STATUS_AWAITING_BEN = "awaiting-ben"
STATUS_FINISHED = "finished"
REASON_FALSIFIED = "strategy-falsified"


@dataclass
class Session:
    """Live game state; all access goes through the per-session lock."""

    id: str
    mode: Mode
    state: AnnState
    created_at: str
    letters: list[Letter] = field(default_factory=list)
    moves: list[tuple[str, Letter]] = field(default_factory=list)
    checker: IncrementalChecker = field(default_factory=IncrementalChecker)
    unary_squares: list[int] = field(default_factory=list)
    status: str = STATUS_AWAITING_BEN
    finished_reason: Optional[str] = None
    witness: Optional[dict] = None
    trace_path: Optional[str] = None
    lock: threading.Lock = field(default_factory=threading.Lock)

    def append(self, player: str, letter: Letter) -> Optional[dict]:
        """Append one letter, log period-1 repeats, persist, and check."""
        if self.letters and self.letters[-1] == letter:
            self.unary_squares.append(len(self.letters) - 1)
        self.letters.append(letter)
        self.moves.append((player, letter))
        if self.trace_path is not None:
            with open(self.trace_path, "a", encoding="utf-8") as handle:
                handle.write(f"{player} {letter.token}\n")
        witness = self.checker.append_and_check(letter)
        if witness is None:
            return None
        return {"start": witness.start, "period": witness.period}

    def finish(self, reason: str, witness: Optional[dict]) -> None:
        self.status = STATUS_FINISHED
        self.finished_reason = reason
        self.witness = witness

    def trace_text(self) -> str:
        lines = [f"# mode={self.mode.token}"]
        lines.extend(f"{player} {letter.token}" for player, letter in self.moves)
        return "\n".join(lines) + "\n"

    def view(self, last_exchange: Optional[dict] = None) -> dict:
        data = {
            "id": self.id,
            "mode": self.mode.token,
            "word": [letter.token for letter in self.letters],
            "players": [player for player, _ in self.moves],
            "turn": "ben" if self.status == STATUS_AWAITING_BEN else None,
            "status": self.status,
            "finished_reason": self.finished_reason,
            "witness": self.witness,
            "favourite_track": self.state.favourite_track,
            "tau_counter": self.state.count,
            "unary_squares": list(self.unary_squares),
            "threat": near_square_threat(self.letters),
            "moves": len(self.moves),
            "created_at": self.created_at,
        }
        if last_exchange is not None:
            data["last_exchange"] = last_exchange
        return data

    def summary(self) -> dict:
        return {
            "id": self.id,
            "mode": self.mode.token,
            "status": self.status,
            "moves": len(self.moves),
            "created_at": self.created_at,
        }


def _error(status: int, slug: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": slug, "message": message})


def create_app(trace_dir: Optional[str] = None, debug: bool = False,
               cors_origin: str = "*") -> FastAPI:
    """Build the service app with its own isolated session store."""
    app = FastAPI(title="thue-arena sessions", version="1.0.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cors_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()
    if trace_dir is not None:
        os.makedirs(trace_dir, exist_ok=True)

    async def _json_body(request: Request) -> Optional[dict]:
        try:
            data = await request.json()
        except (json.JSONDecodeError, UnicodeDecodeError):
            return None
        return data if isinstance(data, dict) else None

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await _json_body(request)
        if body is None:
            return _error(400, "invalid-json", "request body must be a JSON object")
        raw_mode = body.get("mode", Mode.ANN_STARTS.token)
        try:
            mode = Mode.parse(raw_mode)
        except (ParseError, ValueError):
            return _error(400, "invalid-mode",
                          f"mode must be ann-starts or ben-starts, got {raw_mode!r}")
        session_id = secrets.token_urlsafe(16)
        opening, state = initial_state(mode)
        created = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        session = Session(id=session_id, mode=mode, state=state, created_at=created)
        if trace_dir is not None:
            session.trace_path = os.path.join(trace_dir, f"{session_id}.trace")
            with open(session.trace_path, "w", encoding="utf-8") as handle:
                handle.write(f"# mode={mode.token}\n")
        if opening is not None:
            session.append("A", opening)
        with store_lock:
            sessions[session_id] = session
        return JSONResponse(status_code=201, content=session.view())

    def _lookup(session_id: str) -> Optional[Session]:
        with store_lock:
            return sessions.get(session_id)

    @app.get("/sessions")
    async def list_sessions():
        with store_lock:
            items = list(sessions.values())
        return [session.summary() for session in items]

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        session = _lookup(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        with session.lock:
            return session.view()

    @app.post("/sessions/{session_id}/moves")
    async def submit_move(session_id: str, request: Request):
        session = _lookup(session_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {session_id!r}")
        body = await _json_body(request)
        if body is None or "letter" not in body:
            return _error(422, "invalid-letter", 'request body must be {"letter": "<token>"}')
        try:
            ben = parse_letter(str(body["letter"]))
        except (InvalidLetter, ParseError) as exc:
            return _error(422, "invalid-letter", str(exc))
        turn = body.get("turn")
        if turn is not None and not isinstance(turn, int):
            return _error(422, "invalid-turn", "turn must be an integer word length")
        with session.lock:
            if session.status != STATUS_AWAITING_BEN:
                return _error(409, "out-of-turn",
                              f"session is {session.status} ({session.finished_reason})")
            if turn is not None and turn != len(session.letters):
                return _error(409, "out-of-turn",
                              f"expected word length {turn}, session is at {len(session.letters)}")
            witness = session.append("B", ben)
            exchange = {"ben": ben.token, "ann": None}
            if witness is not None:
                session.finish(REASON_FALSIFIED, witness)
            else:
                ann, session.state = respond(session.state, ben)
                witness = session.append("A", ann)
                exchange["ann"] = ann.token
                if witness is not None:
                    session.finish(REASON_FALSIFIED, witness)
            return session.view(last_exchange=exchange)

    if debug:
        @app.get("/sessions/{session_id}/consistency")
        async def check_consistency(session_id: str):
            session = _lookup(session_id)
            if session is None:
                return _error(404, "unknown-session", f"no session {session_id!r}")
            with session.lock:
                trace = session.trace_text()
                want_moves = list(session.moves)
                want_witness = session.witness
            try:
                record = arena.replay(trace)
            except DivergenceError as exc:
                return {"consistent": False, "message": str(exc)}
            got_witness = (None if record.witness is None else
                           {"start": record.witness.start, "period": record.witness.period})
            consistent = (list(record.moves) == want_moves and got_witness == want_witness)
            return {"consistent": consistent, "moves": len(record.moves)}

    return app


def default_app() -> FastAPI:
    """App with environment-driven config, for `uvicorn thue_arena.service:app`."""
    return create_app(
        trace_dir=os.environ.get("THUE_ARENA_TRACE_DIR"),
        debug=os.environ.get("THUE_ARENA_DEBUG", "") not in ("", "0", "false"),
        cors_origin=os.environ.get("THUE_ARENA_CORS_ORIGIN", "*"),
    )


app = default_app()
