import pytest

from wreathgame.boards import Streetmap
from wreathgame.graphs import cycle_graph, infinite_path, path_graph
from wreathgame.ids import VertexId


@pytest.fixture
def p2_street() -> Streetmap:
    """Two-state lamps over the infinite path."""
    return Streetmap(path_graph(2), VertexId(0), infinite_path())


@pytest.fixture
def c5_street() -> Streetmap:
    """Five-state cyclic lamps over the infinite path."""
    return Streetmap(cycle_graph(5), VertexId(0), infinite_path())
