"""Game engine and verification laboratory for lamplighter-style
pursuit-evasion games on wreath products of graphs."""

from .boards import (
    Board,
    Move,
    Streetmap,
    apply_board_move,
    board_all_default,
    board_from_json,
    board_from_payload,
    board_moves,
    board_neighbors,
)
from .errors import (
    ConfigError,
    GeodesicNotFoundError,
    GraphTooLargeError,
    GraphTooSmallError,
    GroupMismatchError,
    IllegalMoveError,
    InvalidVertexError,
    InvariantViolationError,
    PlanMismatchError,
    StreetmapMismatchError,
    StrategyFaultError,
    WreathGameError,
)
from .graphs import (
    ExplicitGraph,
    LazyGraph,
    Path,
    ball,
    cycle_graph,
    distance,
    find_geodesic,
    infinite_path,
    isomorphism,
    materialize,
    path_graph,
    truncated_cube,
)
from .ids import FinSupportedMap, VertexId
from .lamp import (
    GameParams,
    GameState,
    apply_move,
    board_distance,
    check_copier_win,
    initial_state,
    legal_moves,
    run_lamplighter_game,
)
from .strategy import (
    PaperLamplighter,
    StrategyPlan,
    TransferredRobber,
    plan_parameters,
)
from .trace import GameTrace
from .wcr import run_wcr
from .wreath import board_graph, phi_iso, phi_iso_inverse, wreath_product

__version__ = "0.1.0"

__all__ = [
    "Board", "Move", "Streetmap", "apply_board_move", "board_all_default",
    "board_from_json", "board_from_payload", "board_moves",
    "board_neighbors", "ConfigError", "GeodesicNotFoundError",
    "GraphTooLargeError", "GraphTooSmallError", "GroupMismatchError",
    "IllegalMoveError", "InvalidVertexError", "InvariantViolationError",
    "PlanMismatchError", "StreetmapMismatchError", "StrategyFaultError",
    "WreathGameError", "ExplicitGraph", "LazyGraph", "Path", "ball",
    "cycle_graph", "distance", "find_geodesic", "infinite_path",
    "isomorphism", "materialize", "path_graph", "truncated_cube",
    "FinSupportedMap", "VertexId", "GameParams", "GameState", "apply_move",
    "board_distance", "check_copier_win", "initial_state", "legal_moves",
    "run_lamplighter_game", "PaperLamplighter", "StrategyPlan",
    "TransferredRobber", "plan_parameters", "GameTrace", "run_wcr",
    "board_graph", "phi_iso", "phi_iso_inverse", "wreath_product",
]
