"""Legible sequential decision making in multi-goal grid worlds."""

from .errors import (Divergence, EmptyTrajectory, FixtureMissing,
                     ImpossibleTransition, InfeasibleSampling,
                     InsufficientSamples, InvalidModel, InvalidSpec,
                     LegiplanError, ParseError, PlanningTimeout)
from .legibility import (LegibleProblem, goal_posterior_stack, legible_reward,
                         legible_reward_table, solve_legible)
from .maze import (ACTION_NAMES, GoalMdpFamily, MazeSpec, build_family,
                   build_kernel, parse_maze, random_scenarios, render_maze)
from .mdp import (Policy, SolveResult, TabularMdp, Trajectory,
                  TransitionKernel, boltzmann_policy, greedy_policy,
                  policy_evaluation, rollout, value_iterate)
from .metrics import miura_legibility, polmdp_legibility
from .irl import (Demonstration, GoalPosterior, girl_recover, goal_posterior,
                  sample_demo_states, sample_demo_trajectories, teacher_policy)
from .observer import (BeliefState, ObserverModel, UctConfig, belief_distance,
                       belief_update, lmdp_rollout, observer_model,
                       one_hot_belief, uct_plan_step, uniform_belief)

__version__ = "0.1.0"

__all__ = [
    "ACTION_NAMES", "BeliefState", "Demonstration", "Divergence",
    "EmptyTrajectory", "FixtureMissing", "GoalMdpFamily", "GoalPosterior",
    "ImpossibleTransition", "InfeasibleSampling", "InsufficientSamples",
    "InvalidModel", "InvalidSpec", "LegibleProblem", "LegiplanError",
    "MazeSpec", "ObserverModel", "ParseError", "PlanningTimeout", "Policy",
    "SolveResult", "TabularMdp", "Trajectory", "TransitionKernel",
    "UctConfig", "belief_distance", "belief_update", "boltzmann_policy",
    "build_family", "build_kernel", "girl_recover", "goal_posterior",
    "goal_posterior_stack", "greedy_policy", "legible_reward",
    "legible_reward_table", "lmdp_rollout", "miura_legibility",
    "observer_model", "one_hot_belief", "parse_maze", "policy_evaluation",
    "polmdp_legibility", "random_scenarios", "render_maze", "rollout",
    "sample_demo_states", "sample_demo_trajectories", "solve_legible",
    "teacher_policy", "uct_plan_step", "uniform_belief", "value_iterate",
]
