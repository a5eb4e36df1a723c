"""Legible reward construction and the planner built on it.

The legible reward of a state-action pair for a target goal is the
posterior probability of that goal given the pair, under a maximum-entropy
observation model over the per-goal optimal Q-values. Planning then
reduces to solving one ordinary MDP whose reward table is that posterior.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidModel
from .maze import GoalMdpFamily
from .mdp import Policy, SolveResult, greedy_policy, value_iterate

PRIOR_ATOL = 1e-9


def goal_posterior_stack(per_goal_q: np.ndarray, beta: float,
                         goal_prior: np.ndarray) -> np.ndarray:
    """Posterior P(goal | state, action) for every goal: ``(goals, states, actions)``.

    Computed as a prior-weighted softmax of ``beta * Q`` across goals, with
    max-subtraction so large Q-scales cannot overflow.
    """
    with np.errstate(divide="ignore"):
        z = beta * per_goal_q + np.log(goal_prior)[:, None, None]
    z = z - z.max(axis=0, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=0, keepdims=True)


@dataclass(frozen=True)
class LegibleProblem:
    """Inputs of one legible planning instance.

    ``per_goal_q`` holds the optimal Q-table of every member MDP in goal
    order; it is computed once per family and reused across target goals.
    """

    family: GoalMdpFamily
    target_goal_index: int
    per_goal_q: np.ndarray
    beta: float = 1.0
    goal_prior: np.ndarray = field(default=None)

    def __post_init__(self):
        n = self.family.num_goals
        if self.goal_prior is None:
            object.__setattr__(self, "goal_prior", np.full(n, 1.0 / n))
        prior = np.asarray(self.goal_prior, dtype=np.float64)
        object.__setattr__(self, "goal_prior", prior)
        if prior.shape != (n,) or prior.min() < 0 \
                or abs(prior.sum() - 1.0) > PRIOR_ATOL:
            raise InvalidModel("goal_prior must be a distribution over the goals")
        if len(self.per_goal_q) != n:
            raise InvalidModel("per_goal_q must hold one Q-table per goal")
        if not 0 <= self.target_goal_index < n:
            raise InvalidModel(f"target goal {self.target_goal_index} out of range")
        if self.beta < 0:
            raise InvalidModel("beta must be nonnegative")

    @classmethod
    def from_family(cls, family: GoalMdpFamily, target_goal_index: int,
                    beta: float = 1.0, goal_prior: np.ndarray | None = None,
                    tolerance: float = 1e-6) -> "LegibleProblem":
        return cls(family=family, target_goal_index=target_goal_index,
                   per_goal_q=family.q_stack(tolerance), beta=beta,
                   goal_prior=goal_prior)

    def for_target(self, target_goal_index: int) -> "LegibleProblem":
        return replace(self, target_goal_index=target_goal_index)


def legible_reward_table(problem: LegibleProblem) -> np.ndarray:
    """Dense legible reward table for the problem's target goal."""
    stack = goal_posterior_stack(np.asarray(problem.per_goal_q), problem.beta,
                                 problem.goal_prior)
    return stack[problem.target_goal_index]


def legible_reward(problem: LegibleProblem, state: int, action: int) -> float:
    """Posterior probability of the target goal given one (state, action)."""
    q = np.asarray(problem.per_goal_q)[:, state, action]
    with np.errstate(divide="ignore"):
        z = problem.beta * q + np.log(problem.goal_prior)
    z = z - z.max()
    e = np.exp(z)
    return float(e[problem.target_goal_index] / e.sum())


def solve_legible(problem: LegibleProblem, tolerance: float = 1e-6,
                  max_iterations: int = 10_000,
                  deadline: float | None = None) -> tuple[SolveResult, Policy]:
    """Solve the MDP whose reward is the target goal's legibility."""
    member = problem.family.mdps[problem.target_goal_index]
    legible_mdp = member.with_rewards(legible_reward_table(problem))
    result = value_iterate(legible_mdp, tolerance=tolerance,
                           max_iterations=max_iterations, deadline=deadline)
    return result, greedy_policy(result)
