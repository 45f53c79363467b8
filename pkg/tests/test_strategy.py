import random
from types import SimpleNamespace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathgame.boards import Streetmap, board_all_default
from wreathgame.errors import GraphTooSmallError, PlanMismatchError
from wreathgame.graphs import infinite_path, path_graph
from wreathgame.ids import VertexId
from wreathgame.lamp import board_distance, run_lamplighter_game
from wreathgame.strategy import (
    GreedyChaserCopier,
    PaperLamplighter,
    RandomWalkerCopier,
    StationaryCopier,
    center_board,
    center_distance_bound,
    initial_board,
    lamplighter_turn,
    plan_ball_radius,
    plan_parameters,
    plan_path_vertices,
    plan_radius,
    plan_speed,
    strategy_from_config,
)

ZERO = VertexId(0)
ONE = VertexId(1)


def test_formula_examples():
    assert (plan_speed(2, 3, 2), plan_radius(2, 3, 2),
            plan_path_vertices(2, 3, 2)) == (12, 5, 9)
    assert plan_ball_radius(5) == 62
    assert (plan_speed(1, 1, 1), plan_radius(1, 1, 1),
            plan_path_vertices(1, 1, 1)) == (6, 2, 4)
    assert plan_ball_radius(2) == 26


@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20))
def test_formulas_exact(n, sigma, rho):
    assert plan_speed(n, sigma, rho) == 3 * n + sigma + rho + 1
    assert plan_radius(n, sigma, rho) == -((sigma + rho) // -2) + n
    assert plan_path_vertices(n, sigma, rho) == sigma + rho + 2 * n
    r = plan_radius(n, sigma, rho)
    assert plan_ball_radius(r) == 2 * (6 * r + 1)


def test_plan_shape(p2_street):
    plan = plan_parameters(p2_street, 1, 1, 1)
    assert plan.psi == 6 and plan.r == 2 and plan.R == 26
    assert len(plan.path) == 4
    assert plan.omega1 == ONE
    assert plan.label_names == ("l1", "m1", "m2", "r1")
    assert plan.left_lamp(1) == plan.path[0]
    assert plan.right_lamp(1) == plan.path[3]
    assert plan.v == plan.path[len(plan.path) // 2]


def test_plan_path_within_area(c5_street):
    from wreathgame.graphs import distance
    plan = plan_parameters(c5_street, 2, 3, 2)
    for x in plan.path:
        assert distance(c5_street.lam, plan.v, x, plan.r) is not None


def test_plan_too_small():
    m = Streetmap(path_graph(2), ZERO, path_graph(3))
    with pytest.raises(GraphTooSmallError):
        plan_parameters(m, 3, 3, 3)


def test_initial_board_all_default_copiers(p2_street):
    plan = plan_parameters(p2_street, 2, 1, 1)
    copiers = [board_all_default(p2_street, plan.v) for _ in range(2)]
    b = initial_board(plan, copiers)
    assert b.p == plan.path[0]
    for i in (1, 2):
        assert b.state_at(plan.left_lamp(i)) == plan.omega1
        assert b.state_at(plan.right_lamp(i)) == plan.omega1


def test_initial_board_flips_on_marked_copier(p2_street):
    plan = plan_parameters(p2_street, 1, 1, 1)
    copier = board_all_default(p2_street, plan.v).with_state(
        plan.left_lamp(1), plan.omega1)
    b = initial_board(plan, [copier])
    assert b.state_at(plan.left_lamp(1)) == ZERO  # disagreement via default
    assert b.state_at(plan.right_lamp(1)) == plan.omega1


def test_initial_board_third_state(c5_street):
    plan = plan_parameters(c5_street, 1, 1, 1)
    copier = board_all_default(c5_street, plan.v).with_state(
        plan.left_lamp(1), VertexId(3))
    b = initial_board(plan, [copier])
    assert b.state_at(plan.left_lamp(1)) == ZERO
    assert b.state_at(plan.left_lamp(1)) != copier.state_at(plan.left_lamp(1))


def test_initial_board_wrong_count(p2_street):
    plan = plan_parameters(p2_street, 2, 1, 1)
    with pytest.raises(PlanMismatchError):
        initial_board(plan, [board_all_default(p2_street, plan.v)])


def test_sweep_no_toggles_when_copiers_idle(p2_street):
    plan = plan_parameters(p2_street, 1, 1, 1)
    copiers = [board_all_default(p2_street, plan.v)]
    b = initial_board(plan, copiers)
    state = SimpleNamespace(lamplighter_board=b, copier_boards=tuple(copiers))
    moves = lamplighter_turn(plan, state, "to_r")
    assert [mv.kind for mv in moves] == ["walk", "walk", "walk"]


def test_sweep_toggles_matched_lamp(p2_street):
    plan = plan_parameters(p2_street, 1, 1, 1)
    copiers = [board_all_default(p2_street, plan.v)]
    b = initial_board(plan, copiers)
    # Copier copies the lamplighter's r1 state, forcing one toggle there.
    copier = copiers[0].with_state(plan.right_lamp(1), plan.omega1)
    state = SimpleNamespace(lamplighter_board=b, copier_boards=(copier,))
    moves = lamplighter_turn(plan, state, "to_r")
    toggles = [mv for mv in moves if mv.kind == "set_state"]
    assert len(toggles) == 1
    assert len(moves) <= plan.psi


def test_sweep_requires_position_at_origin(p2_street):
    plan = plan_parameters(p2_street, 1, 1, 1)
    copiers = [board_all_default(p2_street, plan.v)]
    b = initial_board(plan, copiers)
    state = SimpleNamespace(lamplighter_board=b, copier_boards=tuple(copiers))
    from wreathgame.errors import InvariantViolationError
    with pytest.raises(InvariantViolationError):
        lamplighter_turn(plan, state, "to_l")  # board sits at the l1 end


def test_center_distance_bound_is_valid_upper_bound(p2_street):
    plan = plan_parameters(p2_street, 1, 1, 1)
    rng = random.Random(3)
    center = center_board(plan)
    for _ in range(30):
        # A random strategy-shaped board: position on P, some marked lamps.
        pos = rng.choice(plan.path)
        b = board_all_default(p2_street, pos)
        for lamp in plan.path:
            if rng.random() < 0.5:
                b = b.with_state(lamp, plan.omega1)
        ub = center_distance_bound(plan, b)
        exact = board_distance(center, b, ub)
        assert exact is not None and exact <= ub


def test_center_distance_bound_rejects_foreign_shape(c5_street):
    plan = plan_parameters(c5_street, 1, 1, 1)
    off_path = board_all_default(c5_street, VertexId(40))
    with pytest.raises(PlanMismatchError):
        center_distance_bound(plan, off_path)
    foreign_state = board_all_default(c5_street, plan.v).with_state(
        plan.v, VertexId(4))
    if VertexId(4) != plan.omega1:
        with pytest.raises(PlanMismatchError):
            center_distance_bound(plan, foreign_state)


@pytest.mark.parametrize("adversary", [
    StationaryCopier,
    lambda: RandomWalkerCopier(5),
    GreedyChaserCopier,
])
def test_full_game_invariants(p2_street, adversary):
    trace = run_lamplighter_game(p2_street, 1, 2, 1, [adversary()],
                                 PaperLamplighter(), 30, 1)
    assert trace.outcome == "survived"
    plan_ev = next(ev for ev in trace.events
                   if ev["ev"] == "setup" and ev["what"] == "plan")
    path = set(plan_ev["path"])
    psi = plan_ev["psi"]
    for t in range(1, trace.stats["turns_played"] + 1):
        lamp_moves = [ev for ev in trace.events
                      if ev["ev"] == "move" and ev["t"] == t
                      and ev["actor"] == "L"]
        assert len(lamp_moves) <= psi


def test_random_walker_is_seed_deterministic(p2_street):
    t1 = run_lamplighter_game(p2_street, 1, 2, 1, [RandomWalkerCopier(9)],
                              PaperLamplighter(), 20, 3)
    t2 = run_lamplighter_game(p2_street, 1, 2, 1, [RandomWalkerCopier(9)],
                              PaperLamplighter(), 20, 3)
    assert t1.to_ndjson() == t2.to_ndjson()
    t3 = run_lamplighter_game(p2_street, 1, 2, 1, [RandomWalkerCopier(9)],
                              PaperLamplighter(), 20, 4)
    assert t1.to_ndjson() != t3.to_ndjson()


def test_greedy_chaser_walks_geodesically(p2_street):
    from wreathgame.lamp import GameParams, initial_state
    params = GameParams(1, 3, 1, 6, 6, ZERO)
    lamp = board_all_default(p2_street, ZERO)
    copier = board_all_default(p2_street, VertexId(5))
    state = initial_state(p2_street, params, lamp, [copier])
    moves = GreedyChaserCopier().turn_moves(state, 0)
    assert [mv.kind for mv in moves] == ["walk"] * 3
    assert [mv.target for mv in moves] == [VertexId(4), VertexId(3),
                                           VertexId(2)]


def test_greedy_chaser_fixes_standing_lamp_first(p2_street):
    from wreathgame.lamp import GameParams, initial_state
    params = GameParams(1, 2, 1, 6, 6, ZERO)
    lamp = board_all_default(p2_street, ZERO).with_state(VertexId(2), ONE)
    copier = board_all_default(p2_street, VertexId(2))
    state = initial_state(p2_street, params, lamp, [copier])
    moves = GreedyChaserCopier().turn_moves(state, 0)
    assert moves[0].kind == "set_state" and moves[0].target == ONE


def test_strategy_from_config():
    assert isinstance(strategy_from_config({"kind": "stationary"}),
                      StationaryCopier)
    assert isinstance(strategy_from_config({"kind": "random", "seed": 3}),
                      RandomWalkerCopier)
    assert isinstance(strategy_from_config({"kind": "greedy"}),
                      GreedyChaserCopier)
    with pytest.raises(ValueError):
        strategy_from_config({"kind": "psychic"})
