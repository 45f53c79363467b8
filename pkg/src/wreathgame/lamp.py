"""Rules engine for the Lamplighter game.

Covers legal-move enumeration, atomic move application, the board-distance
metric, win detection at atomic-move granularity, and full-game execution
against pluggable strategies with deterministic NDJSON traces.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .boards import Board, Move, Streetmap, apply_board_move, board_moves
from .errors import (
    IllegalMoveError,
    InvariantViolationError,
    StreetmapMismatchError,
    StrategyFaultError,
)
from .graphs import ball, distance
from .ids import VertexId
from .trace import GameTrace, dumps

LAMPLIGHTER = "L"


@dataclass(frozen=True)
class GameParams:
    """Numeric game parameters plus the center of the area of play."""

    n: int
    sigma: int
    rho: int
    psi: int
    r: int
    v: VertexId

    def __post_init__(self):
        for name in ("n", "sigma", "rho", "psi", "r"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class GameState:
    """Snapshot of a Lamplighter game between atomic moves."""

    streetmap: Streetmap
    params: GameParams
    area: frozenset  # of VertexId
    lamplighter_board: Board
    copier_boards: Tuple[Board, ...]
    turn: int = 0
    phase: str = "copiers"  # "copiers" | "lamplighter"
    lamp_moves_used: int = 0
    copier_moves_used: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.phase not in ("copiers", "lamplighter"):
            raise ValueError(f"unknown phase {self.phase!r}")
        if len(self.copier_boards) != self.params.n:
            raise ValueError("board count does not match n")
        if not self.copier_moves_used:
            object.__setattr__(self, "copier_moves_used",
                               (0,) * self.params.n)
        if self.lamplighter_board.p not in self.area:
            raise ValueError("lamplighter position outside the area of play")


def initial_state(streetmap: Streetmap, params: GameParams,
                  lamplighter_board: Board,
                  copier_boards: Sequence[Board]) -> GameState:
    area = ball(streetmap.lam, params.v, params.r)
    for lamp in lamplighter_board.phi.support():
        if lamp not in area:
            raise IllegalMoveError(
                "outside-area", "lamplighter setup support must lie within "
                "the area of play")
    return GameState(streetmap, params, area, lamplighter_board,
                     tuple(copier_boards))


def actor_code(actor) -> str:
    return LAMPLIGHTER if actor == LAMPLIGHTER else f"C{actor}"


def _actor_board(state: GameState, actor) -> Board:
    if actor == LAMPLIGHTER:
        return state.lamplighter_board
    return state.copier_boards[actor]


def _check_turn(state: GameState, actor) -> None:
    if actor == LAMPLIGHTER:
        if state.phase != "lamplighter":
            raise IllegalMoveError("wrong-phase", "not the lamplighter's phase")
        if state.lamp_moves_used >= state.params.psi:
            raise IllegalMoveError("speed-exhausted",
                                   f"psi={state.params.psi} used up")
    else:
        if state.phase != "copiers":
            raise IllegalMoveError("wrong-phase", "not the copiers' phase")
        if state.copier_moves_used[actor] >= state.params.sigma:
            raise IllegalMoveError("speed-exhausted",
                                   f"sigma={state.params.sigma} used up")


def legal_moves(state: GameState, actor) -> List[Move]:
    """All legal atomic moves for ``actor``: state changes, then walks.

    Only the lamplighter's walks are restricted to the area of play.
    """
    _check_turn(state, actor)
    board = _actor_board(state, actor)
    out = board_moves(board)
    if actor == LAMPLIGHTER:
        out = [mv for mv in out
               if mv.kind != "walk" or mv.target in state.area]
    return out


def apply_move(state: GameState, actor, move: Move) -> GameState:
    """Apply one atomic move, enforcing phase, speed, adjacency, and area."""
    _check_turn(state, actor)
    board = _actor_board(state, actor)
    if actor == LAMPLIGHTER and move.kind == "walk" \
            and move.target not in state.area:
        raise IllegalMoveError("outside-area",
                               f"walk target {move.target!r}")
    new_board = apply_board_move(board, move)
    if actor == LAMPLIGHTER:
        return replace(state, lamplighter_board=new_board,
                       lamp_moves_used=state.lamp_moves_used + 1)
    boards = list(state.copier_boards)
    boards[actor] = new_board
    used = list(state.copier_moves_used)
    used[actor] += 1
    return replace(state, copier_boards=tuple(boards),
                   copier_moves_used=tuple(used))


# ---------------------------------------------------------------------------
# Board distance


def _capped_distance(g, u: VertexId, v: VertexId, cap: int) -> int:
    """min(distance, cap); a valid lower bound on the true distance."""
    d = distance(g, u, v, cap)
    return cap if d is None else d


def _distance_lower_bound(b1: Board, b2: Board, cutoff: int) -> int:
    """A cheap lower bound on the board distance, capped at cutoff + 1.

    Any move sequence must walk from one position to the other while
    standing on every lamp whose state differs, and spend at least the
    state-graph distance on each such lamp.
    """
    m = b1.streetmap
    lam, omega = m.lam, m.omega
    cap = cutoff + 1
    states1 = dict(b1.phi.items())
    states2 = dict(b2.phi.items())
    diff = []
    state_cost = 0
    for lamp in set(states1) | set(states2):
        s1 = states1.get(lamp, m.base_state)
        s2 = states2.get(lamp, m.base_state)
        if s1 != s2:
            diff.append(lamp)
            state_cost += _capped_distance(omega, s1, s2, cap)
            if state_cost > cap:
                return cap
    p1, p2 = b1.p, b2.p
    travel = _capped_distance(lam, p1, p2, cap)
    via = {x: (_capped_distance(lam, p1, x, cap),
               _capped_distance(lam, x, p2, cap)) for x in diff}
    for x in diff:
        a, b = via[x]
        travel = max(travel, a + b)
    for x, y in itertools.combinations(diff, 2):
        gap = _capped_distance(lam, x, y, cap)
        ax, xb = via[x]
        ay, yb = via[y]
        travel = max(travel, min(ax + gap + yb, ay + gap + xb))
    return min(travel + state_cost, cap)


def board_distance(b1: Board, b2: Board, cutoff: int) -> Optional[int]:
    """Minimum number of atomic moves from ``b1`` to ``b2`` if <= cutoff.

    This metric ignores any area-of-play restriction.  A combinatorial
    lower bound prunes hopeless searches; otherwise a bidirectional BFS
    over single-move neighbors decides exactly.
    """
    if b1.streetmap is not b2.streetmap:
        raise StreetmapMismatchError("boards belong to different streetmaps")
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    if b1 == b2:
        return 0
    if _distance_lower_bound(b1, b2, cutoff) > cutoff:
        return None
    da = {b1: 0}
    db = {b2: 0}
    fa, fb = [b1], [b2]
    ra = rb = 0
    best: Optional[int] = None
    while fa and fb:
        if best is not None and best <= ra + rb:
            break
        if ra + rb >= cutoff:
            break
        if len(fa) <= len(fb):
            frontier, dist_map, other = fa, da, db
            ra += 1
            level = ra
        else:
            frontier, dist_map, other = fb, db, da
            rb += 1
            level = rb
        nxt = []
        for x in frontier:
            for mv in board_moves(x):
                y = apply_board_move(x, mv)
                oy = other.get(y)
                if oy is not None and (best is None or level + oy < best):
                    best = level + oy
                if y not in dist_map:
                    dist_map[y] = level
                    nxt.append(y)
        if frontier is fa:
            fa = nxt
        else:
            fb = nxt
    if best is not None and best <= cutoff:
        return best
    return None


def check_copier_win(state: GameState,
                     cutoff: Optional[int] = None) -> Optional[int]:
    """Smallest copier index whose board is within reach, or ``None``."""
    rho = state.params.rho if cutoff is None else cutoff
    for i, b in enumerate(state.copier_boards):
        if board_distance(state.lamplighter_board, b, rho) is not None:
            return i
    return None


# ---------------------------------------------------------------------------
# Full-game execution


def _digest(state: GameState) -> str:
    blob = dumps([state.lamplighter_board.to_json()]
                 + [b.to_json() for b in state.copier_boards])
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class _Runner:
    """Single-game executor; confined to one execution context."""

    def __init__(self, streetmap: Streetmap, n: int, sigma: int, rho: int,
                 copier_strategies, lamplighter_strategy, horizon: int,
                 seed: int, shared_copier_budget: bool = False,
                 dist_margin: int = 2, config_echo: Optional[dict] = None):
        if len(copier_strategies) != n:
            raise StrategyFaultError("need one copier strategy per copier")
        self.m = streetmap
        self.n = n
        self.sigma = sigma
        self.rho = rho
        self.copier_strategies = copier_strategies
        self.lamplighter_strategy = lamplighter_strategy
        self.horizon = horizon
        self.seed = seed
        self.shared = shared_copier_budget
        self.cutoff = rho + dist_margin
        self.config_echo = config_echo or {}

    def run(self) -> GameTrace:
        header = {"ev": "header", "game": "lamplighter", "seed": self.seed,
                  "n": self.n, "sigma": self.sigma, "rho": self.rho,
                  "horizon": self.horizon,
                  "shared_copier_budget": self.shared}
        header.update(self.config_echo)
        trace = GameTrace(header=header)
        self.trace = trace
        self.stats = {"min_dist": None, "max_lamp_moves": 0,
                      "max_copier_moves": 0, "turns_played": 0,
                      "violations": 0}
        try:
            self._setup(trace)
            if self.outcome_open:
                self._play(trace)
        except StrategyFaultError as exc:
            trace.add({"t": self.state.turn if hasattr(self, "state") else 0,
                       "ev": "fault", "actor": getattr(exc, "actor", "?"),
                       "reason": str(exc)})
            trace.outcome = "fault"
        trace.add({"t": self.state.turn if hasattr(self, "state") else 0,
                   "ev": "end", "outcome": trace.outcome})
        trace.stats = self.stats
        return trace

    # -- setup ---------------------------------------------------------

    def _setup(self, trace: GameTrace) -> None:
        self.outcome_open = True
        for i, strat in enumerate(self.copier_strategies):
            reset = getattr(strat, "reset", None)
            if reset:
                reset(self.seed, i)
        reset = getattr(self.lamplighter_strategy, "reset", None)
        if reset:
            reset(self.seed, -1)

        trace.add({"t": 0, "ev": "setup", "what": "copier_params",
                   "sigma": self.sigma, "rho": self.rho})
        plan = self.lamplighter_strategy.make_plan(
            self.m, self.n, self.sigma, self.rho)
        self.plan = plan
        trace.add({"t": 0, "ev": "setup", "what": "plan",
                   "psi": plan.psi, "r": plan.r, "R": plan.R,
                   "v": plan.v.text(),
                   "path": [x.text() for x in plan.path],
                   "labels": list(plan.label_names),
                   "omega1": plan.omega1.text()})
        copier_boards = []
        for i, strat in enumerate(self.copier_strategies):
            b = strat.initial_board(self.m, plan, i)
            copier_boards.append(b)
            trace.add({"t": 0, "ev": "setup", "what": "copier_board",
                       "actor": f"C{i}", "board": b.to_json()})
        lamp_board = self.lamplighter_strategy.initial_board(
            plan, copier_boards)
        params = GameParams(self.n, self.sigma, self.rho, plan.psi, plan.r,
                            plan.v)
        self.state = initial_state(self.m, params, lamp_board, copier_boards)
        self.pair_dist: List[Optional[int]] = [
            board_distance(lamp_board, b, self.cutoff) for b in copier_boards]
        self._check_instant(lamp_board)
        trace.add({"t": 0, "ev": "setup", "what": "lamplighter_board",
                   "actor": "L", "board": lamp_board.to_json(),
                   "dist_min": self._dist_min(),
                   "boards_digest": _digest(self.state)})
        self._note_dist()
        winner = self._winner()
        if winner is not None:
            self._declare_win(winner)

    # -- helpers -------------------------------------------------------

    def _dist_min(self) -> Optional[int]:
        present = [d for d in self.pair_dist if d is not None]
        return min(present) if present else None

    def _note_dist(self) -> None:
        d = self._dist_min()
        if d is not None and (self.stats["min_dist"] is None
                              or d < self.stats["min_dist"]):
            self.stats["min_dist"] = d

    def _winner(self) -> Optional[int]:
        for i, d in enumerate(self.pair_dist):
            if d is not None and d <= self.rho:
                return i
        return None

    def _declare_win(self, winner: int) -> None:
        self.trace.add({"t": self.state.turn, "ev": "win",
                        "actor": f"C{winner}",
                        "dist_min": self.pair_dist[winner],
                        "boards_digest": _digest(self.state)})
        self.trace.outcome = "copiers_win"
        self.outcome_open = False

    def _check_instant(self, lamp_board: Board) -> None:
        check = getattr(self.lamplighter_strategy, "instant_check", None)
        if check is None:
            return
        try:
            check(lamp_board)
        except InvariantViolationError as exc:
            self.stats["violations"] += 1
            raise StrategyFaultError(f"lamplighter invariant: {exc}") from exc

    def _emit_move(self, actor, move: Move) -> None:
        self.trace.add({"t": self.state.turn, "ev": "move",
                        "actor": actor_code(actor), "move": move.to_json(),
                        "dist_min": self._dist_min(),
                        "boards_digest": _digest(self.state)})
        self._note_dist()

    # -- turn loop -----------------------------------------------------

    def _play(self, trace: GameTrace) -> None:
        for turn in range(1, self.horizon + 1):
            self.state = replace(self.state, turn=turn, phase="copiers",
                                 lamp_moves_used=0,
                                 copier_moves_used=(0,) * self.n)
            self.stats["turns_played"] = turn
            if not self._copier_phase():
                return
            self.state = replace(self.state, phase="lamplighter")
            if not self._lamplighter_phase():
                return

    def _copier_phase(self) -> bool:
        shared_used = 0
        for i, strat in enumerate(self.copier_strategies):
            budget = self.sigma - (shared_used if self.shared else 0)
            if budget <= 0:
                break
            try:
                moves = strat.turn_moves(self.state, i)
            except Exception as exc:  # noqa: BLE001 - attributed as a fault
                fault = StrategyFaultError(f"copier {i} raised: {exc!r}")
                fault.actor = f"C{i}"
                raise fault from exc
            if len(moves) > budget:
                fault = StrategyFaultError(
                    f"copier {i} emitted {len(moves)} moves, budget {budget}")
                fault.actor = f"C{i}"
                raise fault
            for mv in moves:
                try:
                    self.state = apply_move(self.state, i, mv)
                except IllegalMoveError as exc:
                    fault = StrategyFaultError(f"copier {i}: {exc}")
                    fault.actor = f"C{i}"
                    raise fault from exc
                shared_used += 1
                self.pair_dist[i] = board_distance(
                    self.state.lamplighter_board, self.state.copier_boards[i],
                    self.cutoff)
                self._emit_move(i, mv)
                winner = self._winner()
                if winner is not None:
                    self._declare_win(winner)
                    return False
        return True

    def _lamplighter_phase(self) -> bool:
        try:
            moves = self.lamplighter_strategy.turn_moves(self.state)
        except Exception as exc:  # noqa: BLE001
            fault = StrategyFaultError(f"lamplighter raised: {exc!r}")
            fault.actor = "L"
            raise fault from exc
        if len(moves) > self.state.params.psi:
            fault = StrategyFaultError(
                f"lamplighter emitted {len(moves)} moves, psi="
                f"{self.state.params.psi}")
            fault.actor = "L"
            raise fault
        self.stats["max_lamp_moves"] = max(self.stats["max_lamp_moves"],
                                           len(moves))
        for mv in moves:
            try:
                self.state = apply_move(self.state, LAMPLIGHTER, mv)
            except IllegalMoveError as exc:
                fault = StrategyFaultError(f"lamplighter: {exc}")
                fault.actor = "L"
                raise fault from exc
            lamp = self.state.lamplighter_board
            self.pair_dist = [board_distance(lamp, b, self.cutoff)
                              for b in self.state.copier_boards]
            try:
                self._check_instant(lamp)
            except StrategyFaultError as fault:
                fault.actor = "L"
                raise
            self._emit_move(LAMPLIGHTER, mv)
            winner = self._winner()
            if winner is not None:
                self._declare_win(winner)
                return False
        post = getattr(self.lamplighter_strategy, "post_turn_check", None)
        if post is not None:
            try:
                post(self.state)
            except InvariantViolationError as exc:
                self.stats["violations"] += 1
                fault = StrategyFaultError(f"post-turn invariant: {exc}")
                fault.actor = "L"
                raise fault from exc
        return True


def run_lamplighter_game(streetmap: Streetmap, n: int, sigma: int, rho: int,
                         copier_strategies, lamplighter_strategy,
                         horizon: int, seed: int, *,
                         shared_copier_budget: bool = False,
                         config_echo: Optional[dict] = None) -> GameTrace:
    """Execute one full game and return its deterministic trace.

    Setup follows the fixed order: copier parameters, the lamplighter's
    plan, copier initial boards, then the lamplighter's initial board; a
    win check runs after setup and after every atomic move.
    """
    return _Runner(streetmap, n, sigma, rho, copier_strategies,
                   lamplighter_strategy, horizon, seed,
                   shared_copier_budget=shared_copier_budget,
                   config_echo=config_echo).run()
