import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wreathgame.boards import Move, board_all_default
from wreathgame.errors import IllegalMoveError, StreetmapMismatchError
from wreathgame.ids import VertexId
from wreathgame.lamp import (
    GameParams,
    apply_move,
    board_distance,
    check_copier_win,
    initial_state,
    legal_moves,
    run_lamplighter_game,
)
from wreathgame.strategy import PaperLamplighter, StationaryCopier
from wreathgame.verify import bfs_distance_oracle, random_board

ZERO = VertexId(0)
ONE = VertexId(1)


def small_state(m, n=1, sigma=1, rho=1, r=3):
    params = GameParams(n, sigma, rho, 6, r, ZERO)
    lamp = board_all_default(m, ZERO)
    copiers = [board_all_default(m, VertexId(2)) for _ in range(n)]
    return initial_state(m, params, lamp, copiers)


def test_params_positivity():
    with pytest.raises(ValueError):
        GameParams(1, 0, 1, 6, 2, ZERO)


def test_initial_state_rejects_support_outside_area(p2_street):
    params = GameParams(1, 1, 1, 6, 2, ZERO)
    lamp = board_all_default(p2_street, ZERO).with_state(VertexId(5), ONE)
    with pytest.raises(IllegalMoveError) as exc:
        initial_state(p2_street, params, lamp,
                      [board_all_default(p2_street, ZERO)])
    assert exc.value.reason == "outside-area"


def test_phase_enforcement(p2_street):
    state = small_state(p2_street)  # phase: copiers
    with pytest.raises(IllegalMoveError) as exc:
        legal_moves(state, "L")
    assert exc.value.reason == "wrong-phase"
    assert legal_moves(state, 0)


def test_copier_speed_budget(p2_street):
    state = small_state(p2_street, sigma=1)
    state = apply_move(state, 0, Move("walk", ONE))
    with pytest.raises(IllegalMoveError) as exc:
        apply_move(state, 0, Move("walk", ZERO))
    assert exc.value.reason == "speed-exhausted"


def test_copier_has_no_area_restriction(p2_street):
    state = small_state(p2_street, sigma=5, r=1)
    # Copier starts at 2, outside ball(0, 1); it may walk even farther.
    state = apply_move(state, 0, Move("walk", VertexId(3)))
    assert state.copier_boards[0].p == VertexId(3)


def test_lamplighter_area_restriction(p2_street):
    from dataclasses import replace
    state = replace(small_state(p2_street, r=1), phase="lamplighter")
    # Walk to 1 stays inside ball(0,1); walk on to 2 would leave it.
    state = apply_move(state, "L", Move("walk", ONE))
    moves = legal_moves(state, "L")
    walk_targets = {mv.target for mv in moves if mv.kind == "walk"}
    assert walk_targets == {ZERO}
    with pytest.raises(IllegalMoveError) as exc:
        apply_move(state, "L", Move("walk", VertexId(2)))
    assert exc.value.reason == "outside-area"


def test_copier_move_count_example(p2_street):
    state = small_state(p2_street)
    assert len(legal_moves(state, 0)) == 3


def test_board_distance_trivial(p2_street):
    b = board_all_default(p2_street, ZERO)
    assert board_distance(b, b, 0) == 0


def test_board_distance_examples(p2_street):
    b0 = board_all_default(p2_street, ZERO)
    b1 = board_all_default(p2_street, ONE).with_state(ONE, ONE)
    assert board_distance(b0, b1, 5) == 2
    b2 = board_all_default(p2_street, ZERO).with_state(ONE, ONE)
    assert board_distance(b0, b2, 5) == 3  # walk, toggle, walk back
    assert board_distance(b0, b2, 2) is None


def test_board_distance_streetmap_mismatch(p2_street, c5_street):
    with pytest.raises(StreetmapMismatchError):
        board_distance(board_all_default(p2_street, ZERO),
                       board_all_default(c5_street, ZERO), 3)


@pytest.mark.parametrize("street_fixture", ["p2_street", "c5_street"])
def test_board_distance_matches_bfs_oracle(street_fixture, request):
    m = request.getfixturevalue(street_fixture)
    import random
    rng = random.Random(7)
    for _ in range(40):
        a = random_board(m, rng, walk_steps=3, lit_lamps=2)
        b = random_board(m, rng, walk_steps=3, lit_lamps=2)
        for cutoff in (0, 3, 8):
            assert board_distance(a, b, cutoff) == \
                bfs_distance_oracle(a, b, cutoff)


def test_board_distance_symmetry(c5_street):
    import random
    rng = random.Random(11)
    for _ in range(25):
        a = random_board(c5_street, rng, walk_steps=3, lit_lamps=2)
        b = random_board(c5_street, rng, walk_steps=3, lit_lamps=2)
        assert board_distance(a, b, 8) == board_distance(b, a, 8)


def test_check_copier_win(p2_street):
    state = small_state(p2_street)
    assert check_copier_win(state) is None
    # Copier standing on the lamplighter's board wins immediately.
    params = GameParams(1, 1, 1, 6, 3, ZERO)
    lamp = board_all_default(p2_street, ZERO)
    state = initial_state(p2_street, params, lamp, [lamp])
    assert check_copier_win(state) == 0


def test_run_horizon_zero(p2_street):
    trace = run_lamplighter_game(p2_street, 1, 1, 1, [StationaryCopier()],
                                 PaperLamplighter(), 0, 0)
    assert trace.outcome == "survived"
    assert all(ev["ev"] in ("setup", "end") for ev in trace.events)


def test_run_survives_and_logs_distance(p2_street):
    trace = run_lamplighter_game(p2_street, 1, 1, 1, [StationaryCopier()],
                                 PaperLamplighter(), 50, 0)
    assert trace.outcome == "survived"
    assert trace.stats["turns_played"] == 50
    assert trace.stats["violations"] == 0
    md = trace.stats["min_dist"]
    assert md is None or md > 1


class SittingDuck:
    """Test double: a lamplighter that parks on an all-default board."""

    def make_plan(self, streetmap, n, sigma, rho):
        from wreathgame.strategy import plan_parameters
        self.plan = plan_parameters(streetmap, n, sigma, rho)
        return self.plan

    def initial_board(self, plan, copier_boards):
        return board_all_default(plan.streetmap, plan.path[0])

    def turn_moves(self, state):
        return []


def test_setup_win_check(p2_street):
    class Mimic:
        def initial_board(self, streetmap, plan, index):
            return board_all_default(streetmap, plan.path[0])

        def turn_moves(self, state, index):
            return []

    trace = run_lamplighter_game(p2_street, 1, 1, 1, [Mimic()],
                                 SittingDuck(), 10, 0)
    assert trace.outcome == "copiers_win"
    assert not any(ev["ev"] == "move" for ev in trace.events)


def test_run_win_mid_copier_phase_is_terminal(p2_street):
    class Approacher:
        def initial_board(self, streetmap, plan, index):
            return board_all_default(streetmap, VertexId(5))

        def turn_moves(self, state, index):
            b = state.copier_boards[index]
            return [Move("walk", VertexId(b.p.payload - 1))]

    trace = run_lamplighter_game(p2_street, 1, 1, 2, [Approacher()],
                                 SittingDuck(), 10, 0)
    assert trace.outcome == "copiers_win"
    win_events = [ev for ev in trace.events if ev["ev"] == "win"]
    assert len(win_events) == 1
    assert win_events[0]["actor"] == "C0"
    assert win_events[0]["dist_min"] <= 2
    # No move events after the win.
    idx = trace.events.index(win_events[0])
    assert all(ev["ev"] == "end" for ev in trace.events[idx + 1:])


def test_overbudget_copier_is_a_fault(p2_street):
    class Flooder:
        def initial_board(self, streetmap, plan, index):
            return board_all_default(streetmap, plan.v)

        def turn_moves(self, state, index):
            return [Move("set_state", ONE), Move("set_state", ZERO)]

    trace = run_lamplighter_game(p2_street, 1, 1, 1, [Flooder()],
                                 PaperLamplighter(), 5, 0)
    assert trace.outcome == "fault"
    fault = next(ev for ev in trace.events if ev["ev"] == "fault")
    assert fault["actor"] == "C0"


def test_illegal_copier_move_is_a_fault(p2_street):
    class Jumper:
        def initial_board(self, streetmap, plan, index):
            return board_all_default(streetmap, plan.v)

        def turn_moves(self, state, index):
            return [Move("walk", VertexId(99))]

    trace = run_lamplighter_game(p2_street, 1, 1, 1, [Jumper()],
                                 PaperLamplighter(), 5, 0)
    assert trace.outcome == "fault"
    fault = next(ev for ev in trace.events if ev["ev"] == "fault")
    assert fault["actor"] == "C0"


def test_shared_budget_caps_total_moves(p2_street):
    class Walker:
        def initial_board(self, streetmap, plan, index):
            return board_all_default(streetmap, plan.v)

        def turn_moves(self, state, index):
            return [Move("set_state", ONE
                         if state.copier_boards[index].state_at(
                             state.copier_boards[index].p) == ZERO
                         else ZERO)]

    trace = run_lamplighter_game(p2_street, 3, 2, 1,
                                 [Walker(), Walker(), Walker()],
                                 PaperLamplighter(), 3, 0,
                                 shared_copier_budget=True)
    assert trace.outcome in ("survived", "copiers_win")
    for t in range(1, trace.stats["turns_played"] + 1):
        copier_moves = [ev for ev in trace.events
                        if ev["ev"] == "move" and ev["t"] == t
                        and ev["actor"].startswith("C")]
        assert len(copier_moves) <= 2
