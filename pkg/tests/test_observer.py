import math

import numpy as np
import pytest

import legiplan as lp
from legiplan.errors import ImpossibleTransition, PlanningTimeout
from legiplan.fixtures import fixture
from legiplan.mdp import softmax_rows


def test_uninformative_observation_keeps_uniform(corridor_family):
    # noop rows of Q are symmetric at the exact corridor midpoint
    spec = corridor_family.spec
    mid = spec.state_index((0, 3))
    belief = lp.uniform_belief(2)
    out = lp.belief_update(belief, mid, 4, mid, corridor_family)
    assert out.probabilities == pytest.approx([0.5, 0.5], abs=1e-9)


def test_one_hot_belief_is_absorbing(corridor_family):
    belief = lp.one_hot_belief(2, 1)
    out = lp.belief_update(belief, 2, 3, 3, corridor_family)
    assert out.probabilities.tolist() == [0.0, 1.0]


def test_two_goal_bayes_update_matches_hand_computation(corridor_family):
    spec = corridor_family.spec
    mid = spec.state_index((0, 3))
    nxt = spec.state_index((0, 2))
    eta = 1.0
    belief = lp.uniform_belief(2)
    out = lp.belief_update(belief, mid, 2, nxt, corridor_family,
                           observer_eta=eta)
    # hand evaluation: Boltzmann action likelihoods from each goal's Q row
    q = corridor_family.q_stack()
    lik = []
    for n in range(2):
        row = np.exp(eta * (q[n, mid] - q[n, mid].max()))
        lik.append(row[2] / row.sum())
    expected = np.array([0.5 * lik[0], 0.5 * lik[1]])
    expected /= expected.sum()
    assert out.probabilities == pytest.approx(expected, abs=1e-9)


def test_impossible_transition_rejected(corridor_family):
    spec = corridor_family.spec
    with pytest.raises(ImpossibleTransition):
        lp.belief_update(lp.uniform_belief(2), spec.state_index((0, 3)), 2,
                         spec.state_index((0, 5)), corridor_family)


def test_belief_stays_on_simplex(corridor_family):
    rng = np.random.default_rng(0)
    kernel = corridor_family.kernel
    belief = lp.uniform_belief(2)
    x = 3
    for _ in range(200):
        a = int(rng.integers(5))
        y = kernel.sample_next(x, a, rng)
        belief = lp.belief_update(belief, x, a, y, corridor_family)
        p = belief.probabilities
        assert p.min() >= 0.0
        assert abs(p.sum() - 1.0) <= 1e-9
        x = y if y not in (0, 6) else 3


def test_distances_identical_beliefs_are_zero():
    b = lp.uniform_belief(4)
    for kind in ("kl", "euclidean", "tv"):
        assert lp.belief_distance(b, b, kind) == 0.0


def test_distances_uniform_two_vs_one_hot():
    b = lp.uniform_belief(2)
    t = lp.one_hot_belief(2, 0)
    assert lp.belief_distance(b, t, "tv") == pytest.approx(0.5, abs=1e-12)
    assert lp.belief_distance(b, t, "kl") == pytest.approx(math.log(2), abs=1e-12)
    assert lp.belief_distance(b, t, "euclidean") == \
        pytest.approx(math.sqrt(2) / 2, abs=1e-12)


def test_distances_uniform_six_vs_one_hot():
    b = lp.uniform_belief(6)
    t = lp.one_hot_belief(6, 3)
    assert lp.belief_distance(b, t, "kl") == pytest.approx(math.log(6), abs=1e-9)


def test_kl_cap_on_zero_support():
    b = lp.one_hot_belief(2, 0)
    t = lp.one_hot_belief(2, 1)
    assert lp.belief_distance(b, t, "kl") == 1e6
    assert lp.belief_distance(b, t, "kl", kl_cap=50.0) == 50.0
    assert lp.belief_distance(b, t, "tv") == 1.0


def test_distance_bounds_random_beliefs():
    rng = np.random.default_rng(1)
    for _ in range(50):
        b = lp.BeliefState(rng.dirichlet(np.ones(5)))
        t = lp.one_hot_belief(5, int(rng.integers(5)))
        assert lp.belief_distance(b, t, "kl") >= 0.0
        tv = lp.belief_distance(b, t, "tv")
        assert 0.0 <= tv <= 1.0


def test_bayes_consistency_on_corridor(corridor_family):
    # observations generated by the observer's own model for the true goal
    # must not decrease the expected belief in that goal over time
    spec = corridor_family.spec
    true_goal = 1
    model = lp.observer_model(corridor_family, eta=1.0)
    pol = softmax_rows(corridor_family.q_stack()[true_goal], 1.0)
    horizon = 8
    episodes = 1000
    sums = np.zeros(horizon + 1)
    rng = np.random.default_rng(7)
    kernel = corridor_family.kernel
    goal_state = corridor_family.goal_states[true_goal]
    for _ in range(episodes):
        x = spec.state_index((0, 3))
        b = np.full(2, 0.5)
        sums[0] += b[true_goal]
        for t in range(1, horizon + 1):
            if x != goal_state:
                a = int(np.searchsorted(np.cumsum(pol[x]), rng.random(),
                                        side="right"))
                y = kernel.sample_next(x, a, rng)
                b, _ = model.update_vector(b, x, a)
                x = y
            sums[t] += b[true_goal]
    means = sums / episodes
    assert np.all(np.diff(means) >= -0.02)


def make_uct(seed=0, **kw):
    defaults = dict(iterations_per_step=400, rng_seed=seed)
    defaults.update(kw)
    return lp.UctConfig(**defaults)


def test_uct_single_goal_matches_greedy_on_clear_states():
    spec = lp.parse_maze("....\n.A..\n....\n....\n")
    family = lp.build_family(spec)
    result = family.solve()[0]
    greedy = lp.greedy_policy(result)
    gaps = np.sort(result.q_table, axis=1)
    clear = (gaps[:, -1] - gaps[:, -2]) > 0.1
    cfg = make_uct(seed=3, iterations_per_step=3000)
    for state in range(spec.num_states):
        cell = spec.cell(state)
        if cell in spec.walls or not clear[state] or state == family.goal_states[0]:
            continue
        action = lp.uct_plan_step(state, lp.one_hot_belief(1, 0), 0, family, cfg)
        assert action == greedy.actions[state], f"state {state}"


def test_uct_weight_zero_reaches_goal_via_shortest_path():
    spec = lp.parse_maze("..A\n...\n...\n", failure_probability=0.0)
    family = lp.build_family(spec)
    start = spec.state_index((2, 0))
    cfg = make_uct(seed=5, iterations_per_step=2000, legibility_weight=0.0)
    traj, _ = lp.lmdp_rollout(start, 0, family, cfg, horizon=10)
    assert traj.final_state == family.goal_states[0]
    assert len(traj) == 4  # manhattan distance, deterministic moves


def test_uct_deterministic_under_seed(corridor_family):
    cfg = make_uct(seed=11)
    belief = lp.uniform_belief(2)
    one = lp.uct_plan_step(3, belief, 1, corridor_family, cfg)
    two = lp.uct_plan_step(3, belief, 1, corridor_family, cfg)
    assert one == two


def test_uct_visit_counts_sum_to_iterations(corridor_family):
    cfg = make_uct(seed=2, iterations_per_step=137)
    _, counts = lp.uct_plan_step(3, lp.uniform_belief(2), 1, corridor_family,
                                 cfg, return_counts=True)
    assert counts.sum() == 137


def test_lmdp_rollout_single_step(corridor_family):
    traj, beliefs = lp.lmdp_rollout(3, 1, corridor_family, make_uct(seed=1),
                                    horizon=1)
    assert len(traj) == 1
    assert len(beliefs) == 2


def test_lmdp_rollout_forced_move():
    spec = lp.parse_maze("A.B", failure_probability=0.0)
    family = lp.build_family(spec)
    start = spec.state_index((0, 1))
    traj, beliefs = lp.lmdp_rollout(start, 1, family, make_uct(seed=4),
                                    horizon=5)
    assert len(traj) == 1
    assert traj.final_state == family.goal_states[1]


def test_lmdp_rollout_timeout():
    family = lp.build_family(fixture("10x10"))
    cfg = lp.UctConfig(iterations_per_step=100_000, rng_seed=0)
    with pytest.raises(PlanningTimeout):
        lp.lmdp_rollout(0, 0, family, cfg, horizon=50, time_budget_secs=0.05)


def test_lmdp_mean_final_belief_beats_prior():
    spec = fixture("5x8")
    family = lp.build_family(spec)
    finals = []
    scen = lp.random_scenarios(spec, 50, rng_seed=123)
    for i, (start, label) in enumerate(scen):
        goal = family.goal_index(label)
        cfg = lp.UctConfig(iterations_per_step=300, rng_seed=9000 + i)
        traj, beliefs = lp.lmdp_rollout(start, goal, family, cfg, horizon=40)
        finals.append(beliefs[-1].probabilities[goal])
    assert np.mean(finals) > 1.0 / 3.0
