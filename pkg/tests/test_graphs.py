import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathgame.errors import (
    GeodesicNotFoundError,
    GraphTooLargeError,
    InvalidVertexError,
)
from wreathgame.graphs import (
    ball,
    cube_graph,
    cycle_graph,
    distance,
    find_geodesic,
    infinite_path,
    isomorphism,
    materialize,
    path_graph,
    truncated_cube,
)
from wreathgame.ids import VertexId


def bfs_oracle(g, u, v, cutoff):
    """Plain unidirectional BFS, independent of the engine's search."""
    if u == v:
        return 0
    seen = {u}
    frontier = [u]
    for d in range(1, cutoff + 1):
        nxt = []
        for x in frontier:
            for y in g.neighbors(x):
                if y == v:
                    return d
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return None


def test_infinite_path_neighbors():
    g = infinite_path()
    assert g.neighbors(VertexId(0)) == (VertexId(-1), VertexId(1))


def test_cycle_neighbors():
    g = cycle_graph(5)
    assert g.neighbors(VertexId(0)) == (VertexId(1), VertexId(4))


def test_path_neighbors_and_bounds():
    g = path_graph(2)
    assert g.neighbors(VertexId(0)) == (VertexId(1),)
    with pytest.raises(InvalidVertexError):
        g.neighbors(VertexId(2))


@pytest.mark.parametrize("factory", [
    lambda: path_graph(5),
    lambda: cycle_graph(7),
    infinite_path,
])
def test_neighbor_symmetry_and_sortedness(factory):
    g = factory()
    for v in ball(g, g.base, 3):
        ns = g.neighbors(v)
        assert list(ns) == sorted(set(ns))
        assert v not in ns
        for u in ns:
            assert v in g.neighbors(u)


def test_distance_examples():
    assert distance(infinite_path(), VertexId(-2), VertexId(3), 10) == 5
    assert distance(cycle_graph(5), VertexId(0), VertexId(3), 10) == 2
    assert distance(infinite_path(), VertexId(0), VertexId(7), 3) is None


def test_distance_cutoff_boundary():
    g = infinite_path()
    assert distance(g, VertexId(0), VertexId(4), 4) == 4
    assert distance(g, VertexId(0), VertexId(4), 3) is None


def test_distance_memo_does_not_corrupt_results():
    g = infinite_path()
    # A cut-off query first, then progressively larger cutoffs.
    assert distance(g, VertexId(0), VertexId(6), 2) is None
    assert distance(g, VertexId(0), VertexId(6), 5) is None
    assert distance(g, VertexId(0), VertexId(6), 6) == 6
    assert distance(g, VertexId(0), VertexId(6), 3) is None


@given(st.integers(-30, 30), st.integers(-30, 30), st.integers(0, 12))
def test_distance_matches_oracle_on_infinite_path(a, b, cutoff):
    g = infinite_path()
    got = distance(g, VertexId(a), VertexId(b), cutoff)
    want = abs(a - b) if abs(a - b) <= cutoff else None
    assert got == want


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 9))
def test_distance_matches_oracle_on_cycle(a, b, cutoff):
    g = cycle_graph(9)
    got = distance(g, VertexId(a), VertexId(b), cutoff)
    assert got == bfs_oracle(g, VertexId(a), VertexId(b), cutoff)


@given(st.integers(-10, 10), st.integers(-10, 10), st.integers(-10, 10))
def test_metric_axioms_on_infinite_path(a, b, c):
    g = infinite_path()
    u, v, w = VertexId(a), VertexId(b), VertexId(c)
    assert distance(g, u, u, 0) == 0
    assert distance(g, u, v, 40) == distance(g, v, u, 40)
    duv = distance(g, u, v, 40)
    duw = distance(g, u, w, 40)
    dwv = distance(g, w, v, 40)
    assert duv <= duw + dwv


def test_ball_examples():
    g = infinite_path()
    assert ball(g, VertexId(0), 2) == frozenset(
        VertexId(i) for i in range(-2, 3))
    assert ball(g, VertexId(5), 0) == frozenset({VertexId(5)})
    assert ball(cycle_graph(5), VertexId(0), 2) == frozenset(
        VertexId(i) for i in range(5))


@given(st.integers(0, 10))
def test_ball_size_on_infinite_path(r):
    assert len(ball(infinite_path(), VertexId(0), r)) == 2 * r + 1


def test_find_geodesic_prefers_minimal_endpoint():
    path = find_geodesic(infinite_path(), VertexId(0), 4)
    assert path.vertices == tuple(VertexId(-i) for i in range(5))


def test_find_geodesic_is_geodesic():
    g = cycle_graph(9)
    path = find_geodesic(g, VertexId(0), 4)
    assert path.length == 4
    assert distance(g, path.vertices[0], path.vertices[-1], 10) == 4
    for a, b in zip(path.vertices, path.vertices[1:]):
        assert b in g.neighbors(a)


def test_find_geodesic_too_small():
    with pytest.raises(GeodesicNotFoundError):
        find_geodesic(path_graph(3), VertexId(0), 5)


def test_materialize_limit():
    with pytest.raises(GraphTooLargeError):
        materialize(infinite_path(), limit=10)


def test_materialize_cycle():
    g = materialize(cycle_graph(6), limit=6)
    assert len(g.vertices) == 6
    assert all(g.degree(v) == 2 for v in g.vertices)
    assert g.edge_count() == 6


def test_isomorphism_identity_case():
    c5 = materialize(cycle_graph(5), limit=5)
    mapping = isomorphism(c5, c5)
    assert mapping is not None
    for u in c5.vertices:
        for v in c5.neighbors(u):
            assert c5.has_edge(mapping[u], mapping[v])


def test_isomorphism_rejects_different_degrees():
    p3 = materialize(path_graph(3), limit=3)
    c3 = materialize(cycle_graph(3), limit=3)
    assert isomorphism(p3, c3) is None


def test_isomorphism_rejects_same_degrees_different_structure():
    # C6 vs two triangles: both 2-regular on 6 vertices.
    c6 = materialize(cycle_graph(6), limit=6)
    from wreathgame.graphs import ExplicitGraph
    adj = {}
    for base in (0, 3):
        tri = [VertexId(base + i) for i in range(3)]
        for i, v in enumerate(tri):
            adj[v] = tuple(sorted({tri[(i + 1) % 3], tri[(i + 2) % 3]}))
    two_triangles = ExplicitGraph.from_mapping(adj)
    assert isomorphism(c6, two_triangles) is None


def test_isomorphism_size_bound():
    big = materialize(cycle_graph(64), limit=64)
    c65 = cycle_graph(65)
    with pytest.raises(GraphTooLargeError):
        isomorphism(big, materialize(c65, limit=65))


def test_truncated_cube_shape():
    tc = truncated_cube()
    assert len(tc.vertices) == 24
    assert all(tc.degree(v) == 3 for v in tc.vertices)
    assert tc.edge_count() == 36
    # 8 corner triangles survive truncation.
    triangles = 0
    for u in tc.vertices:
        for v in tc.neighbors(u):
            for w in tc.neighbors(v):
                if w != u and tc.has_edge(w, u):
                    triangles += 1
    assert triangles == 8 * 6  # each triangle counted 3! times


def test_cube_graph_shape():
    q3 = cube_graph()
    assert len(q3.vertices) == 8
    assert all(q3.degree(v) == 3 for v in q3.vertices)
    assert q3.edge_count() == 12
