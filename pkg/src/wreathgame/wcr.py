"""Weak Cops and Robbers rules engine on arbitrary lazy graphs.

Cops relocate anywhere within their speed ball; the robber must present an
explicit path avoiding every cop's reach ball.  The engine never declares
a cop win by exclusion: it records per-turn ball membership and capture
status and lets the harness summarize.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

from .boards import Move, Streetmap, apply_board_move, board_from_payload
from .errors import IllegalMoveError, StrategyFaultError
from .graphs import LazyGraph, ball, distance
from .ids import VertexId
from .trace import GameTrace


@dataclass(frozen=True)
class WcrParams:
    """Cop-side counts and budgets plus the robber's declared choices."""

    n: int
    sigma: int
    rho: int
    psi: int
    R: int
    v: VertexId  # center of the area of play

    def __post_init__(self):
        for name in ("n", "sigma", "rho", "psi", "R"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class WcrState:
    graph: LazyGraph
    params: WcrParams
    cop_positions: Tuple[VertexId, ...]
    robber_position: VertexId
    turn: int = 0
    phase: str = "cops"  # "cops" | "robber"


def cop_move(state: WcrState, i: int, target: VertexId) -> WcrState:
    """Relocate cop ``i`` anywhere within its speed ball (no path clause)."""
    if state.phase != "cops":
        raise IllegalMoveError("wrong-phase", "not the cops' phase")
    state.graph.require(target)
    if distance(state.graph, state.cop_positions[i], target,
                state.params.sigma) is None:
        raise IllegalMoveError(
            "too-far", f"cop {i} cannot reach {target!r} at speed "
            f"{state.params.sigma}")
    cops = list(state.cop_positions)
    cops[i] = target
    return replace(state, cop_positions=tuple(cops))


def captured_by(state: WcrState) -> Optional[int]:
    """Smallest cop index within reach of the robber, or ``None``."""
    for i, c in enumerate(state.cop_positions):
        if distance(state.graph, c, state.robber_position,
                    state.params.rho) is not None:
            return i
    return None


def _forbidden(graph: LazyGraph, v: VertexId, cops: Sequence[VertexId],
               rho: int) -> bool:
    return any(distance(graph, v, c, rho) is not None for c in cops)


def robber_legal_targets(graph: LazyGraph, cops: Sequence[VertexId],
                         robber: VertexId, psi: int,
                         rho: int) -> frozenset:
    """Vertices reachable by a length <= psi path avoiding all reach balls.

    The robber's own vertex is included exactly when it is itself outside
    every reach ball.  May be empty (robber stuck).
    """
    if _forbidden(graph, robber, cops, rho):
        return frozenset()
    seen = {robber}
    frontier = [robber]
    for _ in range(psi):
        nxt = []
        for x in frontier:
            for y in graph.neighbors(x):
                if y in seen or _forbidden(graph, y, cops, rho):
                    continue
                seen.add(y)
                nxt.append(y)
        frontier = nxt
    return frozenset(seen)


class _WcrRunner:
    def __init__(self, graph: LazyGraph, n: int, sigma: int, rho: int,
                 cop_strategies, robber_strategy, horizon: int, seed: int,
                 config_echo: Optional[dict] = None):
        if len(cop_strategies) != n:
            raise StrategyFaultError("need one cop strategy per cop")
        self.graph = graph
        self.n = n
        self.sigma = sigma
        self.rho = rho
        self.cop_strategies = cop_strategies
        self.robber_strategy = robber_strategy
        self.horizon = horizon
        self.seed = seed
        self.config_echo = config_echo or {}

    def run(self) -> GameTrace:
        header = {"ev": "header", "game": "wcr", "seed": self.seed,
                  "n": self.n, "sigma": self.sigma, "rho": self.rho,
                  "horizon": self.horizon}
        header.update(self.config_echo)
        trace = GameTrace(header=header)
        self.trace = trace
        self.stats = {"turns_played": 0, "captures": 0,
                      "in_ball_history": []}
        try:
            self._setup()
            if trace.outcome == "survived":
                self._play()
        except StrategyFaultError as exc:
            trace.add({"t": getattr(self, "turn", 0), "ev": "fault",
                       "actor": getattr(exc, "actor", "?"),
                       "reason": str(exc)})
            trace.outcome = "fault"
        trace.add({"t": getattr(self, "turn", 0), "ev": "end",
                   "outcome": trace.outcome})
        trace.stats = self.stats
        return trace

    def _setup(self) -> None:
        self.turn = 0
        for i, strat in enumerate(self.cop_strategies):
            reset = getattr(strat, "reset", None)
            if reset:
                reset(self.seed, i)
        reset = getattr(self.robber_strategy, "reset", None)
        if reset:
            reset(self.seed, -1)
        psi, R, center = self.robber_strategy.declare(
            self.graph, self.n, self.sigma, self.rho)
        self.center = center
        self.trace.add({"t": 0, "ev": "setup", "what": "params",
                        "sigma": self.sigma, "rho": self.rho, "psi": psi,
                        "R": R, "center": center.text()})
        cops = []
        for i, strat in enumerate(self.cop_strategies):
            pos = strat.initial_position(self.graph, i, center, R)
            cops.append(pos)
            self.trace.add({"t": 0, "ev": "setup", "what": "cop_position",
                            "actor": f"K{i}", "vertex": pos.text()})
        robber = self.robber_strategy.initial_position(self.graph, cops)
        params = WcrParams(self.n, self.sigma, self.rho, psi, R, center)
        self.state = WcrState(self.graph, params, tuple(cops), robber)
        self.trace.add({"t": 0, "ev": "setup", "what": "robber_position",
                        "actor": "R", "vertex": robber.text()})
        winner = captured_by(self.state)
        if winner is not None:
            self._capture(winner)

    def _capture(self, i: int) -> None:
        self.trace.add({"t": self.turn, "ev": "win", "actor": f"K{i}"})
        self.trace.outcome = "captured"
        self.stats["captures"] += 1

    def _in_ball(self) -> bool:
        checker = getattr(self.robber_strategy, "center_within", None)
        pos = self.state.robber_position
        if checker is not None:
            return bool(checker(pos, self.state.params.R))
        return distance(self.graph, pos, self.center,
                        self.state.params.R) is not None

    def _summary(self) -> None:
        dists = [distance(self.graph, self.state.robber_position, c,
                          self.rho + 2) for c in self.state.cop_positions]
        present = [d for d in dists if d is not None]
        in_ball = self._in_ball()
        self.stats["in_ball_history"].append(in_ball)
        self.trace.add({"t": self.turn, "ev": "summary", "in_ball": in_ball,
                        "min_cop_dist": min(present) if present else None})

    def _play(self) -> None:
        for turn in range(1, self.horizon + 1):
            self.turn = turn
            self.stats["turns_played"] = turn
            self.state = replace(self.state, turn=turn, phase="cops")
            for i, strat in enumerate(self.cop_strategies):
                try:
                    target = strat.turn_target(self.state, i)
                    self.state = cop_move(self.state, i, target)
                except IllegalMoveError as exc:
                    fault = StrategyFaultError(f"cop {i}: {exc}")
                    fault.actor = f"K{i}"
                    raise fault from exc
                self.trace.add({"t": turn, "ev": "move", "actor": f"K{i}",
                                "vertex": target.text()})
                winner = captured_by(self.state)
                if winner is not None:
                    self._capture(winner)
                    self._summary()
                    return
            self.state = replace(self.state, phase="robber")
            path = self.robber_strategy.turn_path(self.graph, self.state)
            if len(path) > self.state.params.psi:
                fault = StrategyFaultError(
                    f"robber path of {len(path)} steps exceeds speed "
                    f"{self.state.params.psi}")
                fault.actor = "R"
                raise fault
            prev = self.state.robber_position
            if _forbidden(self.graph, prev, self.state.cop_positions,
                          self.rho):
                self._capture(0)
                self._summary()
                return
            for step in path:
                if step not in self.graph.neighbors(prev):
                    fault = StrategyFaultError(
                        f"robber path step {step!r} not adjacent to {prev!r}")
                    fault.actor = "R"
                    raise fault
                if _forbidden(self.graph, step, self.state.cop_positions,
                              self.rho):
                    fault = StrategyFaultError(
                        f"robber path enters a reach ball at {step!r}")
                    fault.actor = "R"
                    raise fault
                prev = step
            self.state = replace(self.state, robber_position=prev)
            self.trace.add({"t": turn, "ev": "move", "actor": "R",
                            "vertex": prev.text(),
                            "path_len": len(path)})
            self._summary()


def run_wcr(graph: LazyGraph, n: int, sigma: int, rho: int, cop_strategies,
            robber_strategy, horizon: int, seed: int,
            config_echo: Optional[dict] = None) -> GameTrace:
    """Execute one Weak Cops and Robbers game; deterministic trace.

    Setup order: cop parameters, the robber's declared speed/radius/center,
    cop initial positions, then the robber's initial position (a start
    inside a reach ball is recorded as an immediate capture).
    """
    return _WcrRunner(graph, n, sigma, rho, cop_strategies, robber_strategy,
                      horizon, seed, config_echo=config_echo).run()


# ---------------------------------------------------------------------------
# Cop strategies


class StationaryCop:
    """Starts at the declared center and never moves."""

    def initial_position(self, graph: LazyGraph, index: int,
                         center: VertexId, R: int) -> VertexId:
        return center

    def turn_target(self, state: WcrState, i: int) -> VertexId:
        return state.cop_positions[i]


class GreedyBoardCop:
    """Greedy chaser for board-graph vertices over a known streetmap.

    Applies up to sigma single moves: fix the lamp it stands on when it
    disagrees with the robber's board, otherwise step toward the robber's
    position.
    """

    def __init__(self, streetmap: Streetmap):
        self.m = streetmap

    def initial_position(self, graph: LazyGraph, index: int,
                         center: VertexId, R: int) -> VertexId:
        return center

    def turn_target(self, state: WcrState, i: int) -> VertexId:
        target = board_from_payload(self.m, state.robber_position.payload)
        b = board_from_payload(self.m, state.cop_positions[i].payload)
        for _ in range(state.params.sigma):
            here = b.p
            want = target.state_at(here)
            have = b.state_at(here)
            if have != want:
                step = min(self.m.omega.neighbors(have),
                           key=lambda s: (_cap(self.m.omega, s, want), s))
                b = apply_board_move(b, Move("set_state", step))
            elif here != target.p:
                step = min(self.m.lam.neighbors(here),
                           key=lambda q: (_cap(self.m.lam, q, target.p), q))
                b = apply_board_move(b, Move("walk", step))
            else:
                break
        return VertexId(b.payload())


def _cap(g, u, v, cap: int = 64) -> int:
    d = distance(g, u, v, cap)
    return cap if d is None else d
