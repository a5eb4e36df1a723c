"""Observer-belief baseline: Bayes updates over goals plus an online UCT planner.

A simulated observer keeps a belief over candidate goals, updated from each
observed (state, action, next state) triple assuming a noisy-rational
(Boltzmann) actor. The baseline planner searches online for actions that
both make task progress and pull that belief toward the true goal.
"""

from __future__ import annotations

import math
import time
import weakref
from dataclasses import dataclass

import numpy as np

from .errors import ImpossibleTransition, InvalidModel, PlanningTimeout
from .maze import GoalMdpFamily
from .mdp import Trajectory, softmax_rows

BELIEF_ATOL = 1e-9
DEFAULT_KL_CAP = 1e6
DISTANCE_KINDS = ("kl", "euclidean", "tv")


@dataclass(frozen=True)
class BeliefState:
    """Probability vector over candidate goals.

    ``degenerate`` marks a posterior whose unnormalized mass underflowed to
    zero, in which case the prior was returned unchanged.
    """

    probabilities: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=np.float64)
        object.__setattr__(self, "probabilities", p)
        if p.ndim != 1 or p.min() < 0 or abs(p.sum() - 1.0) > BELIEF_ATOL:
            raise InvalidModel("belief must be a probability vector over goals")


def uniform_belief(num_goals: int) -> BeliefState:
    return BeliefState(np.full(num_goals, 1.0 / num_goals))


def one_hot_belief(num_goals: int, goal: int) -> BeliefState:
    p = np.zeros(num_goals)
    p[goal] = 1.0
    return BeliefState(p)


class ObserverModel:
    """Boltzmann action model per goal, precomputed for fast Bayes updates.

    The maze kernel is goal-independent, so the transition factor cancels
    out of the posterior and updates reduce to one likelihood product.
    """

    def __init__(self, family: GoalMdpFamily, eta: float = 1.0,
                 tolerance: float = 1e-6):
        if eta < 0:
            raise ValueError("eta must be nonnegative")
        self.family = family
        self.eta = float(eta)
        policies = softmax_rows(family.q_stack(tolerance), eta)  # (N, S, A)
        n, s, a = policies.shape
        self._lik = np.ascontiguousarray(
            policies.transpose(1, 2, 0).reshape(s * a, n))
        self._num_actions = a

    def likelihoods(self, state: int, action: int) -> np.ndarray:
        """P(action | state, goal) for every goal."""
        return self._lik[state * self._num_actions + action]

    def update_vector(self, belief: np.ndarray, prev_state: int, action: int
                      ) -> tuple[np.ndarray, bool]:
        post = belief * self.likelihoods(prev_state, action)
        total = post.sum()
        if total <= 0.0:
            return belief.copy(), True
        return post / total, False


_observer_cache: "weakref.WeakKeyDictionary[GoalMdpFamily, dict]" = \
    weakref.WeakKeyDictionary()


def observer_model(family: GoalMdpFamily, eta: float = 1.0,
                   tolerance: float = 1e-6) -> ObserverModel:
    per_family = _observer_cache.setdefault(family, {})
    key = (eta, tolerance)
    if key not in per_family:
        per_family[key] = ObserverModel(family, eta, tolerance)
    return per_family[key]


def belief_update(belief: BeliefState, prev_state: int, action: int,
                  next_state: int, family: GoalMdpFamily,
                  observer_eta: float = 1.0, tolerance: float = 1e-6
                  ) -> BeliefState:
    """Posterior belief after observing one (state, action, next state) triple.

    The shared kernel makes the transition term identical across goals, so
    only the per-goal Boltzmann action likelihood enters. Raises
    :class:`ImpossibleTransition` when the observed move has zero kernel
    probability.
    """
    if family.kernel.probability(prev_state, action, next_state) <= 0.0:
        raise ImpossibleTransition(
            f"transition {prev_state} --{action}--> {next_state} has zero probability")
    model = observer_model(family, observer_eta, tolerance)
    post, degenerate = model.update_vector(belief.probabilities, prev_state, action)
    return BeliefState(post, degenerate=degenerate)


def belief_distance(belief: BeliefState, target: BeliefState, kind: str,
                    kl_cap: float = DEFAULT_KL_CAP) -> float:
    """Distance from ``belief`` to the reference ``target`` distribution.

    ``kl`` is the target-weighted log-ratio sum (for a one-hot target this
    is ``-log belief[true goal]``), capped at ``kl_cap`` on zero support;
    ``euclidean`` is the 2-norm; ``tv`` the total-variation distance.
    """
    b = belief.probabilities
    t = target.probabilities
    if b.shape != t.shape:
        raise InvalidModel("belief and target must cover the same goals")
    if kind == "kl":
        mask = t > 0.0
        if np.any(b[mask] <= 0.0):
            return kl_cap
        val = float(np.sum(t[mask] * np.log(t[mask] / b[mask])))
        return min(val, kl_cap)
    if kind == "euclidean":
        return float(np.linalg.norm(b - t))
    if kind == "tv":
        return float(0.5 * np.abs(b - t).sum())
    raise ValueError(f"unknown distance kind {kind!r}")


@dataclass(frozen=True)
class UctConfig:
    """Search hyperparameters for the online baseline planner."""

    iterations_per_step: int = 2000
    exploration_constant: float = math.sqrt(2.0)
    rollout_horizon: int = 25
    rollout_policy: str = "random"
    distance_kind: str = "kl"
    legibility_weight: float = 1.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.iterations_per_step < 1:
            raise InvalidModel("iterations_per_step must be at least 1")
        if self.rollout_horizon < 1:
            raise InvalidModel("rollout_horizon must be at least 1")
        if self.legibility_weight < 0:
            raise InvalidModel("legibility_weight must be nonnegative")
        if self.rollout_policy not in ("random", "boltzmann"):
            raise InvalidModel(f"unknown rollout policy {self.rollout_policy!r}")
        if self.distance_kind not in DISTANCE_KINDS:
            raise InvalidModel(f"unknown distance kind {self.distance_kind!r}")


class _Node:
    __slots__ = ("state", "belief", "visits", "counts", "values", "children")

    def __init__(self, state: int, belief: np.ndarray, num_actions: int):
        self.state = state
        self.belief = belief
        self.visits = 0
        self.counts = np.zeros(num_actions, dtype=np.int64)
        self.values = np.zeros(num_actions, dtype=np.float64)
        self.children: list[dict[int, "_Node"]] = [dict() for _ in range(num_actions)]


class _Search:
    """One UCT search instance over the (grid state, belief) augmented space."""

    def __init__(self, family: GoalMdpFamily, true_goal: int, config: UctConfig,
                 observer: ObserverModel, rng: np.random.Generator,
                 deadline: float | None):
        self.family = family
        self.config = config
        self.observer = observer
        self.rng = rng
        self.deadline = deadline
        self.kernel = family.kernel
        self.gamma = family.discount
        self.rewards = family.mdps[true_goal].rewards
        self.goal_state = family.goal_states[true_goal]
        self.true_goal = true_goal
        self.num_actions = family.kernel.num_actions
        if config.rollout_policy == "boltzmann":
            pol = softmax_rows(family.solve()[true_goal].q_table, observer.eta)
            self._rollout_cum = np.cumsum(pol, axis=1)
        else:
            self._rollout_cum = None

    def _distance(self, belief: np.ndarray) -> float:
        kind = self.config.distance_kind
        p = belief[self.true_goal]
        if kind == "kl":
            return DEFAULT_KL_CAP if p <= 0.0 else min(-math.log(p), DEFAULT_KL_CAP)
        if kind == "tv":
            return 1.0 - p
        return math.sqrt(max(belief.dot(belief) - 2.0 * p + 1.0, 0.0))

    def _step_reward(self, state: int, action: int, belief_after: np.ndarray) -> float:
        return float(self.rewards[state, action]) \
            - self.config.legibility_weight * self._distance(belief_after)

    def _select_action(self, node: _Node) -> int:
        for a in range(self.num_actions):
            if node.counts[a] == 0:
                return a
        means = node.values / node.counts
        bonus = self.config.exploration_constant * np.sqrt(
            math.log(node.visits) / node.counts)
        return int(np.argmax(means + bonus))

    def _rollout_action(self, state: int) -> int:
        if self._rollout_cum is None:
            return int(self.rng.integers(self.num_actions))
        row = self._rollout_cum[state]
        return int(np.searchsorted(row, self.rng.random(), side="right"))

    def _rollout(self, state: int, belief: np.ndarray, depth: int) -> float:
        total = 0.0
        scale = 1.0
        x = state
        b = belief
        for _ in range(depth, self.config.rollout_horizon):
            if x == self.goal_state:
                break
            a = self._rollout_action(x)
            y = self.kernel.sample_next(x, a, self.rng)
            b, _ = self.observer.update_vector(b, x, a)
            total += scale * self._step_reward(x, a, b)
            scale *= self.gamma
            x = y
        return total

    def _simulate(self, node: _Node, depth: int) -> float:
        if depth >= self.config.rollout_horizon or node.state == self.goal_state:
            node.visits += 1
            return 0.0
        a = self._select_action(node)
        y = self.kernel.sample_next(node.state, a, self.rng)
        belief_after, _ = self.observer.update_vector(node.belief, node.state, a)
        reward = self._step_reward(node.state, a, belief_after)
        child = node.children[a].get(y)
        if child is None:
            child = _Node(y, belief_after, self.num_actions)
            node.children[a][y] = child
            child.visits += 1
            tail = self._rollout(y, belief_after, depth + 1)
        else:
            tail = self._simulate(child, depth + 1)
        value = reward + self.gamma * tail
        node.visits += 1
        node.counts[a] += 1
        node.values[a] += value
        return value

    def plan(self, state: int, belief: np.ndarray) -> tuple[int, np.ndarray]:
        root = _Node(state, belief, self.num_actions)
        for it in range(self.config.iterations_per_step):
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise PlanningTimeout(
                    f"planner exceeded its deadline after {it} simulations")
            self._simulate(root, 0)
        return int(np.argmax(root.counts)), root.counts.copy()


def uct_plan_step(current: int, belief: BeliefState, true_goal: int,
                  family: GoalMdpFamily, config: UctConfig,
                  observer_eta: float = 1.0,
                  rng: np.random.Generator | None = None,
                  deadline: float | None = None,
                  return_counts: bool = False):
    """One online planning step: the root action with the highest visit count.

    Each simulation samples the kernel, runs the observer update and scores
    task reward minus the weighted belief distance to the true-goal belief.
    Deterministic for a fixed seed; ties break to the lowest action index.
    """
    if not 0 <= current < family.kernel.num_states:
        raise ValueError(f"state {current} out of range")
    if not 0 <= true_goal < family.num_goals:
        raise ValueError(f"goal index {true_goal} out of range")
    if rng is None:
        rng = np.random.default_rng(config.rng_seed)
    observer = observer_model(family, observer_eta)
    search = _Search(family, true_goal, config, observer, rng, deadline)
    action, counts = search.plan(current, belief.probabilities)
    if return_counts:
        return action, counts
    return action


def lmdp_rollout(start: int, true_goal: int, family: GoalMdpFamily,
                 config: UctConfig, horizon: int, observer_eta: float = 1.0,
                 time_budget_secs: float | None = None
                 ) -> tuple[Trajectory, list[BeliefState]]:
    """Full baseline episode: plan, act, observe, update belief, repeat.

    Stops on goal entry or after ``horizon`` steps; raises
    :class:`PlanningTimeout` when the wall-clock budget is exceeded, which
    benchmark callers record as a failed episode.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    deadline = None
    if time_budget_secs is not None:
        deadline = time.monotonic() + time_budget_secs
    seed_root = np.random.SeedSequence(config.rng_seed)
    env_ss, plan_ss = seed_root.spawn(2)
    env_rng = np.random.default_rng(env_ss)
    observer = observer_model(family, observer_eta)
    goal_state = family.goal_states[true_goal]
    belief = uniform_belief(family.num_goals)
    beliefs = [belief]
    states: list[int] = []
    actions: list[int] = []
    x = int(start)
    final = x
    for _ in range(horizon):
        if x == goal_state:
            break
        if deadline is not None and time.monotonic() > deadline:
            raise PlanningTimeout("episode exceeded its wall-clock budget")
        step_rng = np.random.default_rng(plan_ss.spawn(1)[0])
        a = uct_plan_step(x, belief, true_goal, family, config,
                          observer_eta=observer_eta, rng=step_rng,
                          deadline=deadline)
        y = family.kernel.sample_next(x, a, env_rng)
        post, degenerate = observer.update_vector(belief.probabilities, x, a)
        belief = BeliefState(post, degenerate=degenerate)
        states.append(x)
        actions.append(a)
        beliefs.append(belief)
        x = y
        final = x
        if x == goal_state:
            break
    trajectory = Trajectory(states=tuple(states), actions=tuple(actions),
                            final_state=final, true_goal=true_goal,
                            policy_type="lmdp")
    return trajectory, beliefs
