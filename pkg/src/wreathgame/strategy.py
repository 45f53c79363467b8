"""The winning lamplighter strategy, its transfer to a robber strategy on
the board graph, and a catalog of adversary strategies.

The lamplighter plays on a labeled geodesic path inside the area of play,
sweeping end to end each turn and keeping, for every copier, two far-apart
lamps whose states disagree with that copier's board.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from types import SimpleNamespace
from typing import Dict, List, Optional, Sequence, Tuple

from .boards import (
    Board,
    Move,
    Streetmap,
    apply_board_move,
    board_all_default,
    board_from_payload,
    board_moves,
)
from .errors import (
    GeodesicNotFoundError,
    GraphTooSmallError,
    InvariantViolationError,
    PlanMismatchError,
)
from .graphs import Path, distance, find_geodesic
from .ids import FinSupportedMap, VertexId
from .lamp import GameState, board_distance

_CHASE_CUTOFF = 64


def plan_speed(n: int, sigma: int, rho: int) -> int:
    return 3 * n + sigma + rho + 1


def plan_radius(n: int, sigma: int, rho: int) -> int:
    return math.ceil((sigma + rho) / 2) + n


def plan_path_vertices(n: int, sigma: int, rho: int) -> int:
    return sigma + rho + 2 * n


def plan_ball_radius(r: int) -> int:
    return 2 * (6 * r + 1)


@dataclass(frozen=True)
class StrategyPlan:
    """All data the lamplighter commits to before the game starts."""

    streetmap: Streetmap
    n: int
    sigma: int
    rho: int
    psi: int
    r: int
    R: int
    path: Tuple[VertexId, ...]
    v: VertexId
    omega1: VertexId
    labels: Dict[VertexId, Tuple[str, int]] = field(compare=False, hash=False,
                                                    default_factory=dict)

    @property
    def center_index(self) -> int:
        return len(self.path) // 2

    @property
    def label_names(self) -> Tuple[str, ...]:
        n, mid = self.n, self.sigma + self.rho
        return tuple([f"l{i}" for i in range(1, n + 1)]
                     + [f"m{j}" for j in range(1, mid + 1)]
                     + [f"r{i}" for i in range(1, n + 1)])

    def left_lamp(self, i: int) -> VertexId:
        return self.path[i - 1]

    def right_lamp(self, i: int) -> VertexId:
        return self.path[self.n + self.sigma + self.rho + i - 1]

    def label_of(self, lamp: VertexId) -> Optional[Tuple[str, int]]:
        return self.labels.get(lamp)


def plan_parameters(streetmap: Streetmap, n: int, sigma: int,
                    rho: int) -> StrategyPlan:
    """Compute the lamplighter's full pre-game commitment.

    Speed, radius, and path length come from the closed formulas; the path
    is the deterministic geodesic from the lamp graph's base vertex, the
    center is its middle vertex, and the marked state is the minimal
    neighbor of the default state.
    """
    for name, val in (("n", n), ("sigma", sigma), ("rho", rho)):
        if val < 1:
            raise ValueError(f"{name} must be positive")
    psi = plan_speed(n, sigma, rho)
    r = plan_radius(n, sigma, rho)
    num_vertices = plan_path_vertices(n, sigma, rho)
    try:
        path = find_geodesic(streetmap.lam, streetmap.lam.base,
                             num_vertices - 1)
    except GeodesicNotFoundError as exc:
        raise GraphTooSmallError(
            f"lamp graph has no geodesic with {num_vertices} vertices") \
            from exc
    verts = path.vertices
    center = verts[len(verts) // 2]
    omega_nbrs = streetmap.omega.neighbors(streetmap.base_state)
    if not omega_nbrs:
        raise GraphTooSmallError("state graph is trivial")
    omega1 = min(omega_nbrs)
    labels: Dict[VertexId, Tuple[str, int]] = {}
    for i in range(1, n + 1):
        labels[verts[i - 1]] = ("l", i)
        labels[verts[n + sigma + rho + i - 1]] = ("r", i)
    plan = StrategyPlan(streetmap, n, sigma, rho, psi, r,
                        plan_ball_radius(r), verts, center, omega1, labels)
    for x in verts:
        if distance(streetmap.lam, center, x, r) is None:
            raise InvariantViolationError(
                f"path vertex {x!r} escapes the area of play")
    return plan


def initial_board(plan: StrategyPlan,
                  copier_boards: Sequence[Board]) -> Board:
    """The lamplighter's starting board, at the first path endpoint.

    A labeled lamp is marked exactly when the matching copier shows the
    default state there, which forces disagreement at both labeled lamps
    of every copier.
    """
    if len(copier_boards) != plan.n:
        raise PlanMismatchError(
            f"expected {plan.n} copier boards, got {len(copier_boards)}")
    m = plan.streetmap
    lit = {}
    for i in range(1, plan.n + 1):
        for lamp in (plan.left_lamp(i), plan.right_lamp(i)):
            if copier_boards[i - 1].state_at(lamp) == m.base_state:
                lit[lamp] = plan.omega1
    board = Board(m, plan.path[0],
                  FinSupportedMap.from_mapping(m.base_state, lit))
    for i in range(1, plan.n + 1):
        for lamp in (plan.left_lamp(i), plan.right_lamp(i)):
            if board.state_at(lamp) == copier_boards[i - 1].state_at(lamp):
                raise InvariantViolationError(
                    f"setup agreement at {lamp!r} for copier {i}")
    return board


def lamplighter_turn(plan: StrategyPlan, state, heading: str) -> List[Move]:
    """One full sweep along the path in the given heading.

    Before leaving each labeled lamp, toggle it between the default and
    marked state if it currently agrees with the matching copier's board.
    ``state`` only needs ``lamplighter_board`` and ``copier_boards``.
    """
    if heading not in ("to_r", "to_l"):
        raise ValueError(f"unknown heading {heading!r}")
    seq = plan.path if heading == "to_r" else tuple(reversed(plan.path))
    board = state.lamplighter_board
    if board.p != seq[0]:
        raise InvariantViolationError(
            f"lamplighter at {board.p!r}, sweep must start at {seq[0]!r}")
    moves: List[Move] = []
    for k, lamp in enumerate(seq):
        label = plan.label_of(lamp)
        if label is not None:
            i = label[1]
            mine = board.state_at(lamp)
            theirs = state.copier_boards[i - 1].state_at(lamp)
            if mine == theirs:
                if mine == plan.streetmap.base_state:
                    new = plan.omega1
                elif mine == plan.omega1:
                    new = plan.streetmap.base_state
                else:
                    raise InvariantViolationError(
                        f"lamp {lamp!r} holds foreign state {mine!r}")
                moves.append(Move("set_state", new))
                board = board.with_state(lamp, new)
        if k + 1 < len(seq):
            moves.append(Move("walk", seq[k + 1]))
            board = board.with_position(seq[k + 1])
    if len(moves) > plan.psi:
        raise InvariantViolationError(
            f"sweep needs {len(moves)} moves, speed is {plan.psi}")
    return moves


def center_board(plan: StrategyPlan) -> Board:
    return board_all_default(plan.streetmap, plan.v)


def center_distance_bound(plan: StrategyPlan, board: Board) -> int:
    """Certified upper bound on the distance from the all-default center
    board to a lamplighter board.

    Constructs the explicit witness: walk from the center to the path
    endpoint farthest from the board's position, sweep toward the other
    end fixing every marked lamp, then walk back to the position.  Valid
    only for boards of the strategy's shape (position on the path, marked
    lamps on the path).
    """
    idx = {x: k for k, x in enumerate(plan.path)}
    if board.p not in idx:
        raise PlanMismatchError(f"position {board.p!r} is not on the path")
    ip = idx[board.p]
    support_idx = []
    for lamp, st in board.phi.items():
        if lamp not in idx:
            raise PlanMismatchError(f"marked lamp {lamp!r} is not on the path")
        if st != plan.omega1:
            raise PlanMismatchError(f"lamp {lamp!r} holds foreign state {st!r}")
        support_idx.append(idx[lamp])
    last = len(plan.path) - 1
    c = plan.center_index
    need = support_idx + [ip]
    if ip <= last - ip:
        # farthest endpoint is the far end; sweep downward from it
        far, reach = last, min(need)
        walk_in = last - reach
        back = ip - reach
    else:
        far, reach = 0, max(need)
        walk_in = reach
        back = reach - ip
    return abs(c - far) + walk_in + len(support_idx) + back


class PaperLamplighter:
    """Lamplighter strategy implementing the constructive evasion sweep."""

    def __init__(self):
        self.plan: Optional[StrategyPlan] = None
        self.heading = "to_r"

    def reset(self, seed: int, index: int) -> None:
        self.plan = None
        self.heading = "to_r"

    def make_plan(self, streetmap: Streetmap, n: int, sigma: int,
                  rho: int) -> StrategyPlan:
        self.plan = plan_parameters(streetmap, n, sigma, rho)
        self.heading = "to_r"
        return self.plan

    def initial_board(self, plan: StrategyPlan,
                      copier_boards: Sequence[Board]) -> Board:
        return initial_board(plan, copier_boards)

    def turn_moves(self, state) -> List[Move]:
        moves = lamplighter_turn(self.plan, state, self.heading)
        self.heading = "to_l" if self.heading == "to_r" else "to_r"
        return moves

    def instant_check(self, board: Board) -> None:
        """Shape and center-distance invariants, checked per atomic move."""
        plan = self.plan
        bound = 6 * plan.r + 1
        ub = center_distance_bound(plan, board)  # also validates the shape
        if ub > bound:
            # The witness is only an upper bound; decide exactly before
            # declaring a violation.
            if board_distance(center_board(plan), board, bound) is None:
                raise InvariantViolationError(
                    f"center distance exceeds {bound}")

    def post_turn_check(self, state) -> None:
        """Both labeled lamps of every copier must disagree after a sweep."""
        plan = self.plan
        for i in range(1, plan.n + 1):
            for lamp in (plan.left_lamp(i), plan.right_lamp(i)):
                if state.lamplighter_board.state_at(lamp) \
                        == state.copier_boards[i - 1].state_at(lamp):
                    raise InvariantViolationError(
                        f"agreement at {lamp!r} with copier {i}")


# ---------------------------------------------------------------------------
# Adversary (copier) strategies


class StationaryCopier:
    """Never moves; starts at the disclosed center, all lamps default."""

    def initial_board(self, streetmap: Streetmap, plan: StrategyPlan,
                      index: int) -> Board:
        return board_all_default(streetmap, plan.v)

    def turn_moves(self, state: GameState, index: int) -> List[Move]:
        return []


class RandomWalkerCopier:
    """Uniformly random legal moves from a seeded stream."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)

    def reset(self, game_seed: int, index: int) -> None:
        mixed = (game_seed * 1000003 + index * 7919 + self.seed) % (1 << 64)
        self.rng = random.Random(mixed)

    def initial_board(self, streetmap: Streetmap, plan: StrategyPlan,
                      index: int) -> Board:
        return board_all_default(streetmap, plan.v)

    def turn_moves(self, state: GameState, index: int) -> List[Move]:
        b = state.copier_boards[index]
        out: List[Move] = []
        for _ in range(state.params.sigma):
            mv = self.rng.choice(board_moves(b))
            out.append(mv)
            b = apply_board_move(b, mv)
        return out


class GreedyChaserCopier:
    """Walks toward the lamplighter's position; fixes the lamp it stands
    on whenever its state disagrees with the lamplighter's board."""

    def initial_board(self, streetmap: Streetmap, plan: StrategyPlan,
                      index: int) -> Board:
        return board_all_default(streetmap, plan.v)

    def turn_moves(self, state: GameState, index: int) -> List[Move]:
        m = state.streetmap
        target = state.lamplighter_board
        b = state.copier_boards[index]
        out: List[Move] = []
        for _ in range(state.params.sigma):
            here = b.p
            want = target.state_at(here)
            have = b.state_at(here)
            if have != want:
                step = min(m.omega.neighbors(have),
                           key=lambda s: (_cap(m.omega, s, want), s))
                out.append(Move("set_state", step))
                b = apply_board_move(b, out[-1])
            elif here != target.p:
                step = min(m.lam.neighbors(here),
                           key=lambda q: (_cap(m.lam, q, target.p), q))
                out.append(Move("walk", step))
                b = apply_board_move(b, out[-1])
            else:
                break
        return out


def _cap(g, u: VertexId, v: VertexId, cap: int = _CHASE_CUTOFF) -> int:
    d = distance(g, u, v, cap)
    return cap if d is None else d


# ---------------------------------------------------------------------------
# Transfer to the Weak Cops and Robbers game


class TransferredRobber:
    """Robber strategy on the board graph that replays the sweep.

    Cop vertices are read back as copier boards; the declared center is
    the all-default board at the path's middle vertex and the declared
    radius is twice the certified center-distance bound.
    """

    def __init__(self, streetmap: Streetmap):
        self.m = streetmap
        self.inner = PaperLamplighter()
        self.plan: Optional[StrategyPlan] = None
        self.board: Optional[Board] = None

    def reset(self, seed: int, index: int) -> None:
        self.inner = PaperLamplighter()
        self.plan = None
        self.board = None

    def declare(self, graph, n: int, sigma: int, rho: int):
        plan = self.inner.make_plan(self.m, n, sigma, rho)
        self.plan = plan
        center = VertexId(center_board(plan).payload())
        return plan.psi, plan.R, center

    def _copier_boards(self, cop_positions) -> List[Board]:
        return [board_from_payload(self.m, p.payload) for p in cop_positions]

    def initial_position(self, graph, cop_positions) -> VertexId:
        boards = self._copier_boards(cop_positions)
        self.board = self.inner.initial_board(self.plan, boards)
        return VertexId(self.board.payload())

    def turn_path(self, graph, state) -> List[VertexId]:
        view = SimpleNamespace(
            lamplighter_board=self.board,
            copier_boards=tuple(self._copier_boards(state.cop_positions)))
        moves = self.inner.turn_moves(view)
        out: List[VertexId] = []
        b = self.board
        for mv in moves:
            b = apply_board_move(b, mv)
            out.append(VertexId(b.payload()))
        self.board = b
        return out

    def center_within(self, position: VertexId, radius: int) -> bool:
        """Witness-certified membership in the radius ball of the center."""
        b = board_from_payload(self.m, position.payload)
        try:
            if center_distance_bound(self.plan, b) <= radius:
                return True
        except PlanMismatchError:
            pass
        return board_distance(center_board(self.plan), b, radius) is not None


def strategy_from_config(cfg: dict):
    """Instantiate a copier strategy from {"kind": ..., ...}."""
    kind = cfg.get("kind")
    if kind == "stationary":
        return StationaryCopier()
    if kind == "random":
        return RandomWalkerCopier(seed=int(cfg.get("seed", 0)))
    if kind == "greedy":
        return GreedyChaserCopier()
    raise ValueError(f"unknown copier strategy kind {kind!r}")
