import numpy as np
import pytest

from legiplan import build_family, parse_maze

OPEN_3X3 = "..A\n...\n...\n"


def finite_horizon_q(mdp, horizon):
    """Brute-force backward induction oracle, written with plain loops so it
    shares no code path with the vectorized solver."""
    n_states, n_actions = mdp.num_states, mdp.num_actions
    v = [0.0] * n_states
    q = [[0.0] * n_actions for _ in range(n_states)]
    for _ in range(horizon):
        q = [[0.0] * n_actions for _ in range(n_states)]
        for s in range(n_states):
            for a in range(n_actions):
                states, probs = mdp.kernel.successors(s, a)
                expected = 0.0
                for y, p in zip(states, probs):
                    expected += p * v[y]
                q[s][a] = mdp.rewards[s, a] + mdp.discount * expected
        v = [max(row) for row in q]
    return np.array(q)


@pytest.fixture(scope="session")
def open_3x3_family():
    return build_family(parse_maze(OPEN_3X3))


@pytest.fixture(scope="session")
def corridor_family():
    return build_family(parse_maze("A.....B\n"))
