"""Implicit (lazy) graphs, BFS-based metric operations, concrete families,
and finite-graph isomorphism certification.

Graphs are never materialized unless explicitly requested; every search is
bounded by an explicit cutoff so that operations terminate on infinite
graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Mapping, Optional, Tuple

from .errors import (
    GeodesicNotFoundError,
    GraphTooLargeError,
    InvalidVertexError,
)
from .ids import VertexId

NeighborFn = Callable[[VertexId], Tuple[VertexId, ...]]
ContainsFn = Callable[[VertexId], bool]


class LazyGraph:
    """Implicit graph given by a neighbor function and a base vertex.

    Values are immutable after construction; the only internal mutable
    state is a memo cache for neighbor lists and distances, which is an
    optimization invisible to callers.
    """

    def __init__(self, family: str, base: VertexId, neighbor_fn: NeighborFn,
                 contains_fn: ContainsFn):
        self.family = family
        self.base = base
        self._neighbor_fn = neighbor_fn
        self._contains_fn = contains_fn
        self._nbr_cache: Dict[VertexId, Tuple[VertexId, ...]] = {}
        self._dist_cache: Dict[Tuple[VertexId, VertexId], Tuple[str, int]] = {}

    def contains(self, v: VertexId) -> bool:
        return self._contains_fn(v)

    def require(self, v: VertexId) -> None:
        if not self.contains(v):
            raise InvalidVertexError(f"{v!r} is not a vertex of {self.family}")

    def neighbors(self, v: VertexId) -> Tuple[VertexId, ...]:
        """Duplicate-free adjacency list in the family's canonical order."""
        cached = self._nbr_cache.get(v)
        if cached is not None:
            return cached
        self.require(v)
        out = self._neighbor_fn(v)
        if len(self._nbr_cache) < 500_000:
            self._nbr_cache[v] = out
        return out

    def __repr__(self) -> str:
        return f"LazyGraph({self.family}, base={self.base!r})"


def neighbors(g: LazyGraph, v: VertexId) -> Tuple[VertexId, ...]:
    return g.neighbors(v)


def _bidirectional_bfs(g: LazyGraph, u: VertexId, v: VertexId,
                       cutoff: int) -> Optional[int]:
    da = {u: 0}
    db = {v: 0}
    fa = [u]
    fb = [v]
    ra = rb = 0
    best: Optional[int] = None
    while fa and fb:
        if best is not None and best <= ra + rb:
            break
        if ra + rb >= cutoff:
            break
        # Expand the smaller frontier one full level.
        if len(fa) <= len(fb):
            frontier, dist, other = fa, da, db
            ra += 1
            level = ra
        else:
            frontier, dist, other = fb, db, da
            rb += 1
            level = rb
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                oy = other.get(y)
                if oy is not None:
                    total = level + oy
                    if best is None or total < best:
                        best = total
                if y not in dist:
                    dist[y] = level
                    nxt.append(y)
        if frontier is fa:
            fa = nxt
        else:
            fb = nxt
    if best is not None and best <= cutoff:
        return best
    return None


def distance(g: LazyGraph, u: VertexId, v: VertexId,
             cutoff: int) -> Optional[int]:
    """Graph distance if it is at most ``cutoff``, else ``None``.

    Bidirectional breadth-first search over the neighbor function; results
    are memoized on the graph (exact values, or a proven lower bound when
    the search was cut off).
    """
    if cutoff < 0:
        raise ValueError("cutoff must be nonnegative")
    g.require(u)
    g.require(v)
    if u == v:
        return 0
    key = (u, v) if u < v else (v, u)
    cached = g._dist_cache.get(key)
    if cached is not None:
        kind, val = cached
        if kind == "exact":
            return val if val <= cutoff else None
        if val >= cutoff:  # proven distance > val >= cutoff
            return None
    result = _bidirectional_bfs(g, u, v, cutoff)
    if len(g._dist_cache) < 500_000:
        if result is not None:
            g._dist_cache[key] = ("exact", result)
        else:
            prev = cached[1] if cached is not None and cached[0] == "gt" else -1
            g._dist_cache[key] = ("gt", max(prev, cutoff))
    return result


def ball(g: LazyGraph, center: VertexId, radius: int) -> FrozenSet[VertexId]:
    """All vertices at distance at most ``radius`` from ``center``."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    g.require(center)
    seen = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class Path:
    """A walk along adjacent vertices; geodesic when dist(ends) == length."""

    vertices: Tuple[VertexId, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


def find_geodesic(g: LazyGraph, base: VertexId, length: int) -> Path:
    """A geodesic of exactly ``length`` edges starting at ``base``.

    The endpoint is the VertexId-minimal vertex of the BFS layer at depth
    ``length`` and the path follows VertexId-minimal BFS parents, so the
    result is deterministic.
    """
    if length <= 0:
        raise ValueError("length must be positive")
    g.require(base)
    parent: Dict[VertexId, VertexId] = {}
    depth = {base: 0}
    layer = [base]
    for d in range(1, length + 1):
        nxt: Dict[VertexId, VertexId] = {}
        for x in layer:
            for y in g.neighbors(x):
                if y in depth:
                    continue
                cur = nxt.get(y)
                if cur is None or x < cur:
                    nxt[y] = x
        if not nxt:
            raise GeodesicNotFoundError(
                f"no vertex at distance {length} from {base!r}")
        for y, p in nxt.items():
            depth[y] = d
            parent[y] = p
        layer = sorted(nxt.keys())
    end = layer[0]
    out = [end]
    while out[-1] != base:
        out.append(parent[out[-1]])
    out.reverse()
    return Path(tuple(out))


# ---------------------------------------------------------------------------
# Concrete families


def path_graph(k: int) -> LazyGraph:
    """The k-vertex path on 0..k-1."""
    if k < 1:
        raise ValueError("path needs at least one vertex")

    def contains(v: VertexId) -> bool:
        return isinstance(v.payload, int) and not isinstance(v.payload, bool) \
            and 0 <= v.payload < k

    def nbrs(v: VertexId) -> Tuple[VertexId, ...]:
        i = v.payload
        out = []
        if i - 1 >= 0:
            out.append(VertexId(i - 1))
        if i + 1 < k:
            out.append(VertexId(i + 1))
        return tuple(out)

    return LazyGraph(f"path({k})", VertexId(0), nbrs, contains)


def cycle_graph(k: int) -> LazyGraph:
    """The k-cycle on 0..k-1 (k >= 3 keeps the graph simple)."""
    if k < 3:
        raise ValueError("cycle needs at least three vertices")

    def contains(v: VertexId) -> bool:
        return isinstance(v.payload, int) and not isinstance(v.payload, bool) \
            and 0 <= v.payload < k

    def nbrs(v: VertexId) -> Tuple[VertexId, ...]:
        i = v.payload
        return tuple(sorted({VertexId((i - 1) % k), VertexId((i + 1) % k)}))

    return LazyGraph(f"cycle({k})", VertexId(0), nbrs, contains)


def infinite_path() -> LazyGraph:
    """The two-way infinite path on the integers."""

    def contains(v: VertexId) -> bool:
        return isinstance(v.payload, int) and not isinstance(v.payload, bool)

    def nbrs(v: VertexId) -> Tuple[VertexId, ...]:
        i = v.payload
        return (VertexId(i - 1), VertexId(i + 1))

    return LazyGraph("infinite-path", VertexId(0), nbrs, contains)


# ---------------------------------------------------------------------------
# Explicit finite graphs and isomorphism


@dataclass(frozen=True)
class ExplicitGraph:
    """Fully materialized finite simple graph."""

    adjacency: Tuple[Tuple[VertexId, Tuple[VertexId, ...]], ...]

    @classmethod
    def from_mapping(cls, adj: Mapping[VertexId, Tuple[VertexId, ...]]):
        items = tuple(sorted(((v, tuple(sorted(set(ns)))) for v, ns in adj.items()),
                             key=lambda kv: kv[0]))
        return cls(items)

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return tuple(v for v, _ in self.adjacency)

    def neighbors(self, v: VertexId) -> Tuple[VertexId, ...]:
        for u, ns in self.adjacency:
            if u == v:
                return ns
        raise InvalidVertexError(f"{v!r} not in explicit graph")

    def degree(self, v: VertexId) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: VertexId, v: VertexId) -> bool:
        return v in self.neighbors(u)

    def edge_count(self) -> int:
        return sum(len(ns) for _, ns in self.adjacency) // 2

    def as_lazy(self) -> LazyGraph:
        adj = dict(self.adjacency)
        base = self.vertices[0]
        return LazyGraph("explicit-finite", base,
                         lambda v: adj[v], lambda v: v in adj)


def materialize(g: LazyGraph, limit: int = 64) -> ExplicitGraph:
    """Materialize the connected component of the base vertex."""
    seen = {g.base}
    frontier = [g.base]
    adj: Dict[VertexId, Tuple[VertexId, ...]] = {}
    while frontier:
        nxt = []
        for x in frontier:
            ns = g.neighbors(x)
            adj[x] = ns
            for y in ns:
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise GraphTooLargeError(
                            f"more than {limit} vertices reachable")
                    nxt.append(y)
        frontier = nxt
    return ExplicitGraph.from_mapping(adj)


ISO_VERTEX_BOUND = 64


def isomorphism(g1: ExplicitGraph,
                g2: ExplicitGraph) -> Optional[Dict[VertexId, VertexId]]:
    """An edge-preserving bijection g1 -> g2, or ``None``.

    Backtracking search with degree pruning; vertices of ``g1`` are
    processed in an order that keeps each new vertex adjacent to already
    mapped ones where possible.  The returned mapping is re-verified
    edge-by-edge in both directions before being returned.
    """
    v1 = g1.vertices
    v2 = g2.vertices
    if len(v1) > ISO_VERTEX_BOUND or len(v2) > ISO_VERTEX_BOUND:
        raise GraphTooLargeError(f"isomorphism supports at most "
                                 f"{ISO_VERTEX_BOUND} vertices")
    if len(v1) != len(v2):
        return None
    if sorted(g1.degree(v) for v in v1) != sorted(g2.degree(v) for v in v2):
        return None

    # Order: start at the max-degree vertex, then greedily prefer vertices
    # with the most already-ordered neighbors (ties by VertexId).
    remaining = set(v1)
    order = []
    while remaining:
        if not order:
            pick = max(remaining, key=lambda v: (g1.degree(v),))
        else:
            placed = set(order)
            pick = max(remaining,
                       key=lambda v: (sum(1 for n in g1.neighbors(v)
                                          if n in placed), g1.degree(v)))
        order.append(pick)
        remaining.discard(pick)

    mapping: Dict[VertexId, VertexId] = {}
    used = set()

    def consistent(v: VertexId, w: VertexId) -> bool:
        if g1.degree(v) != g2.degree(w):
            return False
        for n in g1.neighbors(v):
            if n in mapping and not g2.has_edge(w, mapping[n]):
                return False
        # Equal mapped-neighbor counts force non-edges to be preserved too:
        # every mapped neighbor of w must then be the image of a neighbor of v.
        mapped_nbrs_w = sum(1 for m in g2.neighbors(w) if m in used)
        mapped_nbrs_v = sum(1 for n in g1.neighbors(v) if n in mapping)
        return mapped_nbrs_w == mapped_nbrs_v

    def backtrack(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in v2:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if backtrack(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    if not backtrack(0):
        return None
    # Paranoid full verification, both directions.
    for u in v1:
        for w in v1:
            if g1.has_edge(u, w) != g2.has_edge(mapping[u], mapping[w]):
                raise AssertionError("isomorphism search produced a non-iso")
    return dict(mapping)


def cube_graph() -> ExplicitGraph:
    """The 3-cube on bitmask vertices 0..7."""
    adj = {}
    for c in range(8):
        adj[VertexId(c)] = tuple(sorted(VertexId(c ^ (1 << d))
                                        for d in range(3)))
    return ExplicitGraph.from_mapping(adj)


def truncated_cube() -> ExplicitGraph:
    """Vertex truncation of the 3-cube: 24 vertices, 3-regular.

    Each vertex is a (corner, incident-axis) pair; corner triangles plus
    one edge per original cube edge.
    """
    adj: Dict[VertexId, list] = {}
    for c in range(8):
        for d in range(3):
            adj[VertexId((c, d))] = []
    for c in range(8):
        for d1 in range(3):
            for d2 in range(d1 + 1, 3):
                adj[VertexId((c, d1))].append(VertexId((c, d2)))
                adj[VertexId((c, d2))].append(VertexId((c, d1)))
        for d in range(3):
            c2 = c ^ (1 << d)
            if c < c2:
                adj[VertexId((c, d))].append(VertexId((c2, d)))
                adj[VertexId((c2, d))].append(VertexId((c, d)))
    return ExplicitGraph.from_mapping(
        {v: tuple(ns) for v, ns in adj.items()})
