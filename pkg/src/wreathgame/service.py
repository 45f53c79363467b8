"""Interactive session server: a human plays the copiers over JSON
HTTP/WebSocket against the automated lamplighter strategy.

Server-side state is authoritative; every mutation goes through the
protocol and is serialized per session.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import replace
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from .boards import Board, Move, Streetmap, board_from_json
from .configs import streetmap_from_config
from .errors import (
    ConfigError,
    GraphTooSmallError,
    IllegalMoveError,
    WreathGameError,
)
from .ids import VertexId, jsonable_to_payload, payload_to_jsonable
from .lamp import (
    GameParams,
    GameState,
    _digest,
    apply_move,
    board_distance,
    initial_state,
)
from .strategy import PaperLamplighter, StrategyPlan
from .trace import GameTrace

DEFAULT_TTL_SECONDS = 30 * 60


class SessionCreate(BaseModel):
    streetmap: dict
    n: int
    sigma: int
    rho: int


class SessionCreated(BaseModel):
    session_id: str
    psi: int
    r: int
    R: int
    v: object
    omega1: object
    path_labels: List[dict]


class BoardsIn(BaseModel):
    boards: List[dict]


class TeleportIn(BaseModel):
    copier: int = Field(ge=0)
    position: object = None
    board: Optional[dict] = None


class Session:
    """One game: plan, engine state, event log, and protocol phase."""

    def __init__(self, sid: str, streetmap: Streetmap, plan: StrategyPlan):
        self.id = sid
        self.m = streetmap
        self.plan = plan
        self.lamplighter = PaperLamplighter()
        self.lamplighter.plan = plan
        self.phase = "awaiting-copier-boards"
        self.state: Optional[GameState] = None
        self.winner: Optional[int] = None
        self.lock = threading.Lock()
        self.last_access = time.monotonic()
        self.trace = GameTrace(header={
            "ev": "header", "game": "lamplighter-session", "n": plan.n,
            "sigma": plan.sigma, "rho": plan.rho})
        self.trace.add({"t": 0, "ev": "setup", "what": "plan",
                        "psi": plan.psi, "r": plan.r, "R": plan.R,
                        "v": plan.v.text(),
                        "path": [x.text() for x in plan.path],
                        "labels": list(plan.label_names),
                        "omega1": plan.omega1.text()})

    def touch(self) -> None:
        self.last_access = time.monotonic()

    def dist_min(self) -> Optional[int]:
        if self.state is None:
            return None
        cutoff = self.plan.rho + 2
        dists = [board_distance(self.state.lamplighter_board, b, cutoff)
                 for b in self.state.copier_boards]
        present = [d for d in dists if d is not None]
        return min(present) if present else None

    def snapshot(self) -> dict:
        plan = self.plan
        out = {
            "session_id": self.id,
            "phase": self.phase,
            "n": plan.n,
            "sigma": plan.sigma,
            "rho": plan.rho,
            "psi": plan.psi,
            "r": plan.r,
            "winner": self.winner,
        }
        if self.state is None:
            out.update({"turn": 0, "lamplighter_board": None,
                        "copier_boards": [], "copier_moves_used": [],
                        "dist_min": None, "boards_digest": None})
        else:
            st = self.state
            out.update({
                "turn": st.turn,
                "lamplighter_board": st.lamplighter_board.to_json(),
                "copier_boards": [b.to_json() for b in st.copier_boards],
                "copier_moves_used": list(st.copier_moves_used),
                "dist_min": self.dist_min(),
                "boards_digest": _digest(st),
            })
        return out

    # -- game mutations (caller holds self.lock) -----------------------

    def submit_boards(self, boards: List[Board]) -> dict:
        if self.phase != "awaiting-copier-boards":
            raise HTTPException(409, "session is not awaiting copier boards")
        plan = self.plan
        lamp_board = self.lamplighter.initial_board(plan, boards)
        params = GameParams(plan.n, plan.sigma, plan.rho, plan.psi, plan.r,
                            plan.v)
        state = initial_state(self.m, params, lamp_board, boards)
        self.state = replace(state, turn=1, phase="copiers")
        for i, b in enumerate(boards):
            self.trace.add({"t": 0, "ev": "setup", "what": "copier_board",
                            "actor": f"C{i}", "board": b.to_json()})
        self.trace.add({"t": 0, "ev": "setup", "what": "lamplighter_board",
                        "actor": "L", "board": lamp_board.to_json(),
                        "dist_min": self.dist_min(),
                        "boards_digest": _digest(self.state)})
        self.phase = "in-play"
        win = self._win_check()
        return {"lamplighter_board": lamp_board.to_json(),
                "win": win, "snapshot": self.snapshot()}

    def _win_check(self) -> Optional[dict]:
        st = self.state
        for i, b in enumerate(st.copier_boards):
            if board_distance(st.lamplighter_board, b,
                              self.plan.rho) is not None:
                self.winner = i
                self.phase = "finished"
                self.trace.add({"t": st.turn, "ev": "win", "actor": f"C{i}",
                                "boards_digest": _digest(st)})
                self.trace.outcome = "copiers_win"
                return {"copier": i}
        return None

    def copier_move(self, i: int, move: Move) -> dict:
        if self.phase != "in-play":
            raise IllegalMoveError("wrong-phase", "session is not in play")
        if not 0 <= i < self.plan.n:
            raise IllegalMoveError("wrong-phase", f"no copier {i}")
        self.state = apply_move(self.state, i, move)
        self.trace.add({"t": self.state.turn, "ev": "move", "actor": f"C{i}",
                        "move": move.to_json(),
                        "boards_digest": _digest(self.state)})
        win = self._win_check()
        return {"win": win}

    def teleport(self, i: int, new_board: Board) -> dict:
        """Debug replacement of one copier's board, bypassing move rules."""
        if self.phase != "in-play":
            raise HTTPException(409, "session is not in play")
        if not 0 <= i < self.plan.n:
            raise HTTPException(400, f"no copier {i}")
        boards = list(self.state.copier_boards)
        boards[i] = new_board
        self.state = replace(self.state, copier_boards=tuple(boards))
        self.trace.add({"t": self.state.turn, "ev": "move", "actor": f"C{i}",
                        "move": {"kind": "teleport",
                                 "board": new_board.to_json()},
                        "boards_digest": _digest(self.state)})
        win = self._win_check()
        return {"win": win, "snapshot": self.snapshot()}

    def end_turn(self) -> dict:
        if self.phase != "in-play":
            raise IllegalMoveError("wrong-phase", "session is not in play")
        self.state = replace(self.state, phase="lamplighter")
        moves = self.lamplighter.turn_moves(self.state)
        applied = []
        win = None
        for mv in moves:
            self.state = apply_move(self.state, "L", mv)
            applied.append(mv.to_json())
            self.trace.add({"t": self.state.turn, "ev": "move", "actor": "L",
                            "move": mv.to_json(),
                            "boards_digest": _digest(self.state)})
            win = self._win_check()
            if win is not None:
                break
        if self.phase == "in-play":
            self.state = replace(self.state, turn=self.state.turn + 1,
                                 phase="copiers", lamp_moves_used=0,
                                 copier_moves_used=(0,) * self.plan.n)
        return {"moves": applied, "win": win}


class SessionStore:
    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl_seconds
        self.lock = threading.Lock()
        self.sessions: Dict[str, Session] = {}

    def _expire(self) -> None:
        now = time.monotonic()
        dead = [sid for sid, s in self.sessions.items()
                if now - s.last_access > self.ttl]
        for sid in dead:
            del self.sessions[sid]

    def add(self, session: Session) -> None:
        with self.lock:
            self._expire()
            self.sessions[session.id] = session

    def get(self, sid: str) -> Session:
        with self.lock:
            self._expire()
            session = self.sessions.get(sid)
        if session is None:
            raise HTTPException(404, f"no session {sid!r}")
        session.touch()
        return session


store = SessionStore()
app = FastAPI(title="wreathgame session service")


@app.get("/healthz")
def healthz() -> dict:
    return {"ok": True}


@app.post("/sessions", response_model=SessionCreated)
def create_session(req: SessionCreate) -> SessionCreated:
    for name in ("n", "sigma", "rho"):
        if getattr(req, name) < 1:
            raise HTTPException(400, f"{name} must be positive")
    try:
        m = streetmap_from_config(req.streetmap)
    except ConfigError as exc:
        raise HTTPException(400, str(exc)) from exc
    lamplighter = PaperLamplighter()
    try:
        plan = lamplighter.make_plan(m, req.n, req.sigma, req.rho)
    except GraphTooSmallError as exc:
        raise HTTPException(422, str(exc)) from exc
    except (ValueError, WreathGameError) as exc:
        raise HTTPException(400, str(exc)) from exc
    sid = uuid.uuid4().hex
    session = Session(sid, m, plan)
    store.add(session)
    return SessionCreated(
        session_id=sid,
        psi=plan.psi,
        r=plan.r,
        R=plan.R,
        v=payload_to_jsonable(plan.v.payload),
        omega1=payload_to_jsonable(plan.omega1.payload),
        path_labels=[
            {"vertex": payload_to_jsonable(x.payload), "label": name}
            for x, name in zip(plan.path, plan.label_names)])


@app.post("/sessions/{sid}/boards")
def submit_boards(sid: str, req: BoardsIn) -> dict:
    session = store.get(sid)
    if len(req.boards) != session.plan.n:
        raise HTTPException(
            400, f"expected {session.plan.n} boards, got {len(req.boards)}")
    try:
        boards = [board_from_json(session.m, b) for b in req.boards]
    except (WreathGameError, KeyError, TypeError, ValueError) as exc:
        raise HTTPException(400, f"malformed board: {exc}") from exc
    with session.lock:
        return session.submit_boards(boards)


@app.get("/sessions/{sid}")
def get_session(sid: str) -> dict:
    session = store.get(sid)
    with session.lock:
        return session.snapshot()


@app.get("/sessions/{sid}/trace")
def get_trace(sid: str) -> PlainTextResponse:
    session = store.get(sid)
    with session.lock:
        body = session.trace.to_ndjson()
    return PlainTextResponse(body, media_type="application/x-ndjson")


@app.post("/sessions/{sid}/debug/teleport")
def teleport(sid: str, req: TeleportIn) -> dict:
    """Debug cheat: relocate a copier, or replace its whole board."""
    session = store.get(sid)
    try:
        if req.board is not None:
            new_board = board_from_json(session.m, req.board)
        elif req.position is not None:
            position = VertexId(jsonable_to_payload(req.position))
            session.m.lam.require(position)
            with session.lock:
                base = session.state.copier_boards[req.copier] \
                    if session.state is not None else None
            if base is None:
                raise HTTPException(409, "session is not in play")
            new_board = base.with_position(position)
        else:
            raise HTTPException(400, "need position or board")
    except HTTPException:
        raise
    except (WreathGameError, KeyError, TypeError, ValueError,
            IndexError) as exc:
        raise HTTPException(400, f"bad teleport target: {exc}") from exc
    with session.lock:
        return session.teleport(req.copier, new_board)


@app.websocket("/sessions/{sid}/play")
async def play(ws: WebSocket, sid: str) -> None:
    await ws.accept()
    try:
        session = store.get(sid)
    except HTTPException as exc:
        await ws.send_json({"type": "illegal", "reason": "wrong-phase",
                            "detail": exc.detail})
        await ws.close()
        return
    try:
        while True:
            msg = await ws.receive_json()
            for reply in _handle(session, msg):
                await ws.send_json(reply)
    except WebSocketDisconnect:
        return


def _handle(session: Session, msg: dict) -> List[dict]:
    kind = msg.get("type")
    with session.lock:
        session.touch()
        if kind == "move":
            try:
                move = Move.from_json(msg.get("move") or {})
                result = session.copier_move(int(msg.get("copier", -1)), move)
            except IllegalMoveError as exc:
                return [{"type": "illegal", "reason": exc.reason,
                         "detail": str(exc)}]
            except (WreathGameError, KeyError, TypeError,
                    ValueError) as exc:
                return [{"type": "illegal", "reason": "not-adjacent",
                         "detail": str(exc)}]
            out = [{"type": "applied"}]
            if result["win"] is not None:
                out.append({"type": "win",
                            "copier": result["win"]["copier"]})
            out.append({"type": "state", "snapshot": session.snapshot()})
            return out
        if kind == "end_turn":
            try:
                result = session.end_turn()
            except IllegalMoveError as exc:
                return [{"type": "illegal", "reason": exc.reason,
                         "detail": str(exc)}]
            out = [{"type": "lamplighter_turn", "moves": result["moves"]}]
            if result["win"] is not None:
                out.append({"type": "win",
                            "copier": result["win"]["copier"]})
            out.append({"type": "state", "snapshot": session.snapshot()})
            return out
        return [{"type": "illegal", "reason": "wrong-phase",
                 "detail": f"unknown message type {kind!r}"}]
