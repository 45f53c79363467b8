"""Streetmaps, boards, and the two atomic move types.

A streetmap pairs a lamp graph with a state graph and a default state; a
board is a position in the lamp graph plus a finitely supported state
assignment.  Board-level move application here is unrestricted (no area of
play); game-level restrictions live in :mod:`wreathgame.lamp`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .errors import IllegalMoveError, InvalidVertexError
from .graphs import LazyGraph
from .ids import FinSupportedMap, VertexId, jsonable_to_payload, \
    payload_to_jsonable


@dataclass(frozen=True)
class Streetmap:
    """Lamp graph ``lam`` whose lamps take states in ``omega``."""

    omega: LazyGraph
    base_state: VertexId
    lam: LazyGraph

    def __post_init__(self):
        self.omega.require(self.base_state)


@dataclass(frozen=True)
class Board:
    """A position in the lamp graph plus a lamp-state assignment."""

    streetmap: Streetmap
    p: VertexId
    phi: FinSupportedMap  # VertexId -> VertexId, default = base_state

    def __post_init__(self):
        m = self.streetmap
        m.lam.require(self.p)
        if self.phi.default != m.base_state:
            raise ValueError("phi default must be the streetmap base state")
        for lamp, state in self.phi.items():
            m.lam.require(lamp)
            m.omega.require(state)

    def state_at(self, lamp: VertexId) -> VertexId:
        return self.phi.get(lamp)

    def with_position(self, p: VertexId) -> "Board":
        return Board(self.streetmap, p, self.phi)

    def with_state(self, lamp: VertexId, state: VertexId) -> "Board":
        return Board(self.streetmap, self.p, self.phi.with_entry(lamp, state))

    def payload(self):
        """Canonical composite payload: (sorted support entries, position)."""
        entries = tuple((lamp.payload, state.payload)
                        for lamp, state in self.phi.items())
        return (entries, self.p.payload)

    def to_json(self) -> dict:
        return {"f": [[payload_to_jsonable(lamp.payload),
                       payload_to_jsonable(state.payload)]
                      for lamp, state in self.phi.items()],
                "v": payload_to_jsonable(self.p.payload)}


def board_all_default(m: Streetmap, p: VertexId) -> Board:
    return Board(m, p, FinSupportedMap(m.base_state))


def board_from_payload(m: Streetmap, payload) -> Board:
    entries, pos = payload
    phi = FinSupportedMap(
        m.base_state,
        tuple((VertexId(lp), VertexId(sp)) for lp, sp in entries))
    return Board(m, VertexId(pos), phi)


def board_from_json(m: Streetmap, j: dict) -> Board:
    entries = tuple((jsonable_to_payload(lamp), jsonable_to_payload(state))
                    for lamp, state in j["f"])
    return board_from_payload(m, (entries, jsonable_to_payload(j["v"])))


@dataclass(frozen=True)
class Move:
    """Atomic move: walk to an adjacent lamp or re-set the current lamp."""

    kind: str  # "walk" | "set_state"
    target: VertexId

    def __post_init__(self):
        if self.kind not in ("walk", "set_state"):
            raise ValueError(f"unknown move kind {self.kind!r}")

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "target": payload_to_jsonable(self.target.payload)}

    @classmethod
    def from_json(cls, j: dict) -> "Move":
        return cls(j["kind"], VertexId(jsonable_to_payload(j["target"])))


def apply_board_move(board: Board, move: Move) -> Board:
    """Apply one atomic move with adjacency validation only."""
    m = board.streetmap
    if move.kind == "walk":
        if move.target not in m.lam.neighbors(board.p):
            raise IllegalMoveError("not-adjacent",
                                   f"walk {board.p!r} -> {move.target!r}")
        return board.with_position(move.target)
    current = board.state_at(board.p)
    if move.target not in m.omega.neighbors(current):
        raise IllegalMoveError("not-adjacent",
                               f"state {current!r} -> {move.target!r}")
    return board.with_state(board.p, move.target)


def board_moves(board: Board) -> List[Move]:
    """All unrestricted atomic moves, state changes first, each sorted."""
    m = board.streetmap
    out = [Move("set_state", s)
           for s in m.omega.neighbors(board.state_at(board.p))]
    out.extend(Move("walk", q) for q in m.lam.neighbors(board.p))
    return out


def board_neighbors(board: Board) -> List[Board]:
    """Boards one move away, in the order of :func:`board_moves`."""
    return [apply_board_move(board, mv) for mv in board_moves(board)]
