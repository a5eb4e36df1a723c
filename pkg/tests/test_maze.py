import numpy as np
import pytest

import legiplan as lp
from legiplan.errors import InfeasibleSampling, InvalidSpec, ParseError
from legiplan.fixtures import fixture
from legiplan.maze import ACTION_DELTAS, NUM_ACTIONS, build_kernel


def test_parse_minimal_maze():
    spec = lp.parse_maze("A.")
    assert (spec.rows, spec.cols) == (1, 2)
    assert spec.goals == (("A", (0, 0)),)
    assert not spec.walls


def test_parse_wall_between_goals():
    spec = lp.parse_maze("A#B\n")
    assert spec.goal_labels == ("A", "B")
    assert (0, 1) in spec.walls


def test_parse_five_by_eight_fixture():
    spec = fixture("5x8")
    assert (spec.rows, spec.cols) == (5, 8)
    assert spec.num_states == 40
    assert len(spec.goals) == 3


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("A.\n...\n", "length"),
    ("A?\n", "illegal"),
    ("AA\n", "duplicate goal"),
    ("SS.A\n", "duplicate start"),
    ("..\n", "no goal"),
    ("A\t\n", "illegal"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        lp.parse_maze(text)


def test_round_trip_render():
    text = ".#A\nS.B\n...\n"
    assert lp.render_maze(lp.parse_maze(text)) == text


def test_goal_on_wall_rejected():
    with pytest.raises(InvalidSpec):
        lp.MazeSpec(rows=1, cols=2, walls=frozenset({(0, 0)}),
                    goals=(("A", (0, 0)),))


def test_fully_blocked_cell_self_loops():
    spec = lp.parse_maze("###\n#A#\n###\n")
    kernel = build_kernel(spec)
    s = spec.state_index((1, 1))
    for a in range(NUM_ACTIONS):
        states, probs = kernel.successors(s, a)
        assert states.tolist() == [s]
        assert probs.tolist() == [1.0]


def test_movement_split_085_015():
    spec = lp.parse_maze("A.\n..\n")
    kernel = build_kernel(spec)
    below = spec.state_index((1, 1))
    above = spec.state_index((0, 1))
    states, probs = kernel.successors(below, 0)  # "up" into a free cell
    split = dict(zip(states.tolist(), probs.tolist()))
    assert split[above] == pytest.approx(0.85, abs=0)
    assert split[below] == pytest.approx(0.15, abs=1e-12)


def test_zero_failure_matches_deterministic_walk_oracle():
    spec = lp.parse_maze(".A#.\n....\n.#..\nB...\n", failure_probability=0.0)
    kernel = build_kernel(spec)
    for r in range(spec.rows):
        for c in range(spec.cols):
            if (r, c) in spec.walls:
                continue
            s = spec.state_index((r, c))
            for a, (dr, dc) in enumerate(ACTION_DELTAS):
                # independent clamped-walk oracle
                target = (r + dr, c + dc)
                if not (0 <= target[0] < spec.rows and 0 <= target[1] < spec.cols) \
                        or target in spec.walls:
                    target = (r, c)
                states, probs = kernel.successors(s, a)
                assert states.tolist() == [spec.state_index(target)]
                assert probs.tolist() == [1.0]


def test_rows_sum_exactly_one():
    for failure in (0.0, 0.15, 0.3, 0.77):
        spec = lp.parse_maze("A..\n.#.\n..B\n", failure_probability=failure)
        kernel = build_kernel(spec)
        for s in range(spec.num_states):
            for a in range(NUM_ACTIONS):
                _, probs = kernel.successors(s, a)
                assert probs.sum() == 1.0


def test_family_members_share_kernel():
    family = lp.build_family(fixture("fig1"))
    first = family.mdps[0].kernel
    for mdp in family.mdps[1:]:
        assert mdp.kernel is first
        assert mdp.kernel.same_structure(first)


def test_family_goal_order_matches_labels():
    family = lp.build_family(fixture("10x10"))
    assert family.labels == family.spec.goal_labels
    for label, state in zip(family.labels, family.goal_states):
        assert family.spec.cell(state) == family.spec.goal_cell(label)


def test_goal_reward_on_entering_and_at_goal():
    spec = lp.parse_maze("A..\n...\n..B\n")
    family = lp.build_family(spec, goal_reward=1.0, step_reward=0.0)
    rewards = family.mdps[0].rewards  # goal A at (0, 0)
    a_state = spec.state_index((0, 0))
    right_of_a = spec.state_index((0, 1))
    assert np.all(rewards[a_state] == 1.0)
    assert rewards[right_of_a, 2] == 1.0  # moving left enters A
    assert rewards[right_of_a, 3] == 0.0
    far = spec.state_index((2, 1))
    assert np.all(rewards[far] == 0.0)


def test_fixture_goals_reachable_from_all_free_cells():
    for name in ("5x8", "10x10", "25x25", "fig1", "25x25-g10", "irl-3"):
        assert not lp.maze.unreachable_free_cells(fixture(name))


def test_scenarios_forced_unique_pair():
    spec = lp.parse_maze("A.")
    pairs = lp.random_scenarios(spec, 20, rng_seed=0)
    assert set(pairs) == {(spec.state_index((0, 1)), "A")}


def test_scenarios_same_seed_identical():
    spec = fixture("10x10")
    assert lp.random_scenarios(spec, 50, rng_seed=9) == \
        lp.random_scenarios(spec, 50, rng_seed=9)


def test_scenarios_never_start_on_goal():
    spec = fixture("25x25")
    for start, label in lp.random_scenarios(spec, 250, rng_seed=4):
        assert spec.cell(start) != spec.goal_cell(label)


def test_scenarios_infeasible():
    spec = lp.parse_maze("#A#\n")
    with pytest.raises(InfeasibleSampling):
        lp.random_scenarios(spec, 1, rng_seed=0)
