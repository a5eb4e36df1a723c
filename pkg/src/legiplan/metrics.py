"""Trajectory scoring under both frameworks' legibility measures.

Both metrics are oriented higher-is-better: the posterior-based score lives
in (0, 1], the belief-distance score in (-inf, 0].
"""

from __future__ import annotations

import numpy as np

from .errors import EmptyTrajectory
from .legibility import LegibleProblem, goal_posterior_stack
from .maze import GoalMdpFamily
from .mdp import Trajectory
from .observer import (DEFAULT_KL_CAP, belief_distance, belief_update,
                       one_hot_belief, uniform_belief)


def polmdp_legibility(trajectory: Trajectory, problem: LegibleProblem) -> float:
    """Mean per-step posterior of the trajectory's true goal.

    Uses the trajectory's ``true_goal`` tag when present, otherwise the
    problem's target goal.
    """
    if len(trajectory) == 0:
        raise EmptyTrajectory("cannot score an empty trajectory")
    target = trajectory.true_goal
    if target is None:
        target = problem.target_goal_index
    stack = goal_posterior_stack(np.asarray(problem.per_goal_q), problem.beta,
                                 problem.goal_prior)
    states = np.fromiter(trajectory.states, dtype=np.int64)
    actions = np.fromiter(trajectory.actions, dtype=np.int64)
    return float(stack[target, states, actions].mean())


def miura_legibility(trajectory: Trajectory, family: GoalMdpFamily,
                     true_goal: int, observer_eta: float = 1.0,
                     kind: str = "kl", kl_cap: float = DEFAULT_KL_CAP,
                     tolerance: float = 1e-6) -> float:
    """Mean negated distance between the replayed observer belief and the
    one-hot true-goal belief, starting from the uniform prior."""
    if len(trajectory) == 0:
        raise EmptyTrajectory("cannot score an empty trajectory")
    if trajectory.final_state is None:
        raise ValueError("trajectory lacks final_state; cannot replay transitions")
    sequence = trajectory.state_sequence()
    target = one_hot_belief(family.num_goals, true_goal)
    belief = uniform_belief(family.num_goals)
    total = 0.0
    for t, action in enumerate(trajectory.actions):
        belief = belief_update(belief, sequence[t], action, sequence[t + 1],
                               family, observer_eta, tolerance=tolerance)
        total -= belief_distance(belief, target, kind, kl_cap)
    return total / len(trajectory)
