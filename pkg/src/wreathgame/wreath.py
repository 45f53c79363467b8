"""Restricted wreath product of graphs, the graph of boards, and the
bridging identifications between them and Cayley graphs of wreath groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Tuple

from . import groups as grp
from .boards import Board, Streetmap, board_from_payload, board_neighbors
from .errors import InvalidVertexError, StreetmapMismatchError
from .graphs import LazyGraph, ball
from .ids import FinSupportedMap, VertexId, payload_key


@dataclass(frozen=True)
class WreathVertex:
    """A finitely supported state assignment plus a position."""

    f: FinSupportedMap  # VertexId -> VertexId, default = base state
    v: VertexId

    def to_vertex_id(self) -> VertexId:
        entries = tuple((lamp.payload, state.payload)
                        for lamp, state in self.f.items())
        return VertexId((entries, self.v.payload))


def wreath_vertex_from_id(base_state: VertexId, vid: VertexId) -> WreathVertex:
    entries, pos = vid.payload
    f = FinSupportedMap(base_state,
                        tuple((VertexId(lp), VertexId(sp))
                              for lp, sp in entries))
    return WreathVertex(f, VertexId(pos))


def wreath_product(omega: LazyGraph, base_state: VertexId,
                   lam: LazyGraph) -> LazyGraph:
    """The restricted wreath product of ``omega`` by ``lam``.

    Vertices are (assignment, position) pairs; type-1 edges change the
    state at the current position, type-2 edges change the position.  The
    neighbor list gives type-1 neighbors first, then type-2, each block
    internally sorted.
    """
    omega.require(base_state)

    def contains(vid: VertexId) -> bool:
        p = vid.payload
        if not (isinstance(p, tuple) and len(p) == 2
                and isinstance(p[0], tuple)):
            return False
        entries, pos = p
        if not lam.contains(VertexId(pos)):
            return False
        prev = None
        for item in entries:
            if not (isinstance(item, tuple) and len(item) == 2):
                return False
            lp, sp = item
            if not lam.contains(VertexId(lp)):
                return False
            if not omega.contains(VertexId(sp)) or VertexId(sp) == base_state:
                return False
            kk = payload_key(lp)
            if prev is not None and kk <= prev:
                return False
            prev = kk
        return True

    def nbrs(vid: VertexId) -> Tuple[VertexId, ...]:
        w = wreath_vertex_from_id(base_state, vid)
        type1 = []
        current = w.f.get(w.v)
        for s in omega.neighbors(current):
            type1.append(WreathVertex(w.f.with_entry(w.v, s),
                                      w.v).to_vertex_id())
        type2 = []
        for q in lam.neighbors(w.v):
            type2.append(WreathVertex(w.f, q).to_vertex_id())
        return tuple(sorted(type1) + sorted(type2))

    base = WreathVertex(FinSupportedMap(base_state), lam.base).to_vertex_id()
    return LazyGraph("wreath", base, nbrs, contains)


def board_graph(m: Streetmap) -> LazyGraph:
    """The graph whose vertices are boards and whose edges are single moves.

    Built from move enumeration on boards, independently of
    :func:`wreath_product`; the two constructions are connected by
    :func:`phi_iso`.
    """

    def contains(vid: VertexId) -> bool:
        try:
            board_from_payload(m, vid.payload)
        except (InvalidVertexError, ValueError, TypeError):
            return False
        return True

    def nbrs(vid: VertexId) -> Tuple[VertexId, ...]:
        b = board_from_payload(m, vid.payload)
        return tuple(VertexId(nb.payload()) for nb in board_neighbors(b))

    base = VertexId(((), m.lam.base.payload))
    return LazyGraph("board-graph", base, nbrs, contains)


def phi_iso(b: Board) -> WreathVertex:
    """Identify a board with a wreath-product vertex."""
    return WreathVertex(b.phi, b.p)


def phi_iso_inverse(m: Streetmap, w: WreathVertex) -> Board:
    """Inverse identification; validates against the streetmap."""
    if w.f.default != m.base_state:
        raise StreetmapMismatchError("assignment default differs from the "
                                     "streetmap base state")
    return Board(m, w.v, w.f)


@dataclass
class AgreementReport:
    """Result of comparing the two Cayley/wreath neighbor constructions."""

    vertices_checked: int = 0
    mismatches: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def cayley_wreath_agreement(g_group: grp.Group, g_gens: List,
                            h_group: grp.Group, h_gens: List,
                            radius: int) -> AgreementReport:
    """Compare neighbor sets of the wreath group's Cayley graph with the
    graph wreath product of the factor Cayley graphs.

    Both constructions label vertices by the same canonical payloads, so
    the identification is the identity; the report lists any vertex whose
    two neighbor sets differ over the radius ball around the identity.
    """
    wg = grp.WreathGroup(g_group, h_group)
    gens = [grp.embed_left(wg, s) for s in g_gens] + \
           [grp.embed_right(wg, t) for t in h_gens]
    cay = grp.cayley_graph(wg, gens)
    wr = wreath_product(grp.cayley_graph(g_group, g_gens),
                        VertexId(grp.identity(g_group)),
                        grp.cayley_graph(h_group, h_gens))
    report = AgreementReport()
    for vid in sorted(ball(cay, cay.base, radius)):
        via_group = set(cay.neighbors(vid))
        via_wreath = set(wr.neighbors(vid))
        report.vertices_checked += 1
        if via_group != via_wreath:
            report.mismatches.append({
                "vertex": vid.text(),
                "only_group": sorted(v.text() for v in via_group - via_wreath),
                "only_wreath": sorted(v.text() for v in via_wreath - via_group),
            })
    return report
