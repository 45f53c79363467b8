"""Verification suites: structural certificates for the finite claims
(small-graph isomorphisms, the board-graph identification, the Cayley
link) and randomized metric-axiom checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional

from . import groups as grp
from .boards import Board, Streetmap, apply_board_move, board_moves
from .graphs import (
    ExplicitGraph,
    cycle_graph,
    distance,
    isomorphism,
    materialize,
    path_graph,
    truncated_cube,
)
from .ids import FinSupportedMap, VertexId
from .lamp import board_distance
from .wreath import board_graph, cayley_wreath_agreement, phi_iso, \
    phi_iso_inverse, wreath_product


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    counterexample: Optional[dict] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}{extra}"


def check_iso_fig3() -> List[CheckResult]:
    """Certify the two small wreath-product isomorphisms."""
    out = []
    p2 = path_graph(2)
    zero = VertexId(0)

    w1 = materialize(wreath_product(p2, zero, path_graph(2)), limit=8)
    c8 = materialize(cycle_graph(8), limit=8)
    ok1 = len(w1.vertices) == 8 \
        and all(w1.degree(v) == 2 for v in w1.vertices) \
        and isomorphism(w1, c8) is not None
    out.append(CheckResult(
        "wreath(P2,P2) ~ C8", ok1,
        f"{len(w1.vertices)} vertices, 2-regular, bijection verified"))

    w2 = materialize(wreath_product(p2, zero, cycle_graph(3)), limit=24)
    tc = truncated_cube()
    ok2 = len(w2.vertices) == 24 \
        and all(w2.degree(v) == 3 for v in w2.vertices) \
        and len(tc.vertices) == 24 \
        and all(tc.degree(v) == 3 for v in tc.vertices) \
        and isomorphism(w2, tc) is not None
    out.append(CheckResult(
        "wreath(P2,C3) ~ truncated cube", ok2,
        f"{len(w2.vertices)} vertices, 3-regular, bijection verified"))
    return out


def random_board(m: Streetmap, rng: random.Random, walk_steps: int = 6,
                 lit_lamps: int = 3) -> Board:
    """A random board: random-walk position, a few randomly lit lamps."""
    pos = m.lam.base
    for _ in range(rng.randrange(walk_steps + 1)):
        pos = rng.choice(m.lam.neighbors(pos))
    lit = {}
    for _ in range(rng.randrange(lit_lamps + 1)):
        lamp = m.lam.base
        for _ in range(rng.randrange(walk_steps + 1)):
            lamp = rng.choice(m.lam.neighbors(lamp))
        state = m.base_state
        for _ in range(rng.randrange(1, 4)):
            state = rng.choice(m.omega.neighbors(state))
        lit[lamp] = state
    return Board(m, pos, FinSupportedMap.from_mapping(m.base_state, lit))


def check_board_iso(m: Streetmap, samples: int = 100,
                    seed: int = 0) -> CheckResult:
    """Board graph vs graph wreath product: mutually inverse vertex maps
    carrying neighbor sets onto neighbor sets exactly."""
    rng = random.Random(seed)
    bg = board_graph(m)
    wr = wreath_product(m.omega, m.base_state, m.lam)
    for k in range(samples):
        b = random_board(m, rng)
        w = phi_iso(b)
        back = phi_iso_inverse(m, w)
        if back != b:
            return CheckResult("board-iso", False, f"sample {k}",
                               {"board": b.to_json(), "reason": "round-trip"})
        vid = VertexId(b.payload())
        via_boards = set(bg.neighbors(vid))
        via_wreath = set(wr.neighbors(w.to_vertex_id()))
        if via_boards != via_wreath:
            return CheckResult("board-iso", False, f"sample {k}",
                               {"board": b.to_json(),
                                "reason": "neighbor sets differ"})
    return CheckResult("board-iso", True, f"{samples} random boards")


def check_cayley_link(which: str = "Z2wrZ", radius: int = 4) -> CheckResult:
    """Exhaustive neighbor-set agreement over a ball around the identity."""
    if which == "Z2wrZ":
        report = cayley_wreath_agreement(grp.ZmGroup(2), [1],
                                         grp.ZGroup(), [1], radius)
    elif which == "Z3wrZ":
        report = cayley_wreath_agreement(grp.ZmGroup(3), [1, 2],
                                         grp.ZGroup(), [1], radius)
    else:
        raise ValueError(f"unknown cayley-link target {which!r}")
    detail = f"{report.vertices_checked} vertices in radius-{radius} ball"
    if report.ok:
        return CheckResult(f"cayley-link {which}", True, detail)
    return CheckResult(f"cayley-link {which}", False, detail,
                       {"mismatches": report.mismatches[:3]})


def bfs_distance_oracle(start: Board, goal: Board,
                        cutoff: int) -> Optional[int]:
    """Plain unidirectional BFS over single moves; test/verify oracle."""
    if start == goal:
        return 0
    seen = {start}
    frontier = [start]
    for d in range(1, cutoff + 1):
        nxt = []
        for b in frontier:
            for mv in board_moves(b):
                nb = apply_board_move(b, mv)
                if nb == goal:
                    return d
                if nb not in seen:
                    seen.add(nb)
                    nxt.append(nb)
        frontier = nxt
        if not frontier:
            return None
    return None


def check_metric_axioms(m: Streetmap, samples: int = 1000, cutoff: int = 12,
                        seed: int = 0,
                        oracle_pairs: int = 200) -> List[CheckResult]:
    """Metric axioms for the board distance on sampled triples, plus
    agreement with the generic graph distance on the board graph."""
    rng = random.Random(seed)
    out = []
    bg = board_graph(m)
    bad = None
    for k in range(samples):
        a = random_board(m, rng, walk_steps=4, lit_lamps=2)
        b = random_board(m, rng, walk_steps=4, lit_lamps=2)
        c = random_board(m, rng, walk_steps=4, lit_lamps=2)
        if board_distance(a, a, 0) != 0:
            bad = {"k": k, "axiom": "identity"}
            break
        dab = board_distance(a, b, cutoff)
        dba = board_distance(b, a, cutoff)
        if dab != dba:
            bad = {"k": k, "axiom": "symmetry"}
            break
        dac = board_distance(a, c, cutoff)
        dcb = board_distance(c, b, cutoff)
        if dab is not None and dac is not None and dcb is not None \
                and dab > dac + dcb:
            bad = {"k": k, "axiom": "triangle"}
            break
    out.append(CheckResult("metric-axioms", bad is None,
                           f"{samples} triples, cutoff {cutoff}", bad))
    bad = None
    for k in range(oracle_pairs):
        a = random_board(m, rng, walk_steps=4, lit_lamps=2)
        b = random_board(m, rng, walk_steps=4, lit_lamps=2)
        via_boards = board_distance(a, b, cutoff)
        via_graph = distance(bg, VertexId(a.payload()), VertexId(b.payload()),
                             cutoff)
        if via_boards != via_graph:
            bad = {"k": k, "a": a.to_json(), "b": b.to_json(),
                   "board_distance": via_boards, "graph_distance": via_graph}
            break
    out.append(CheckResult("metric-oracle-agreement", bad is None,
                           f"{oracle_pairs} pairs, cutoff {cutoff}", bad))
    return out
