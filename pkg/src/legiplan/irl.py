"""Goal inference from demonstrations and gradient-based reward recovery.

Two learners: a Bayesian goal posterior over the known per-goal reward
candidates (used by the teaching experiments) and a gradient ascent that
recovers a free-form state reward from the Boltzmann likelihood of the
demonstrated pairs.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from .errors import Divergence
from .legibility import LegibleProblem, solve_legible
from .maze import GoalMdpFamily
from .mdp import (Policy, TabularMdp, greedy_policy, rollout,
                  softmax_rows, value_iterate)

POLICY_TYPES = ("optimal", "legible")


@dataclass(frozen=True)
class Demonstration:
    """State-action pairs shown to a learner, tagged with their provenance."""

    pairs: tuple
    source_policy: str
    true_goal: int

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("a demonstration needs at least one pair")
        if self.source_policy not in POLICY_TYPES:
            raise ValueError(f"unknown source policy {self.source_policy!r}")

    def prefix(self, count: int) -> tuple:
        return self.pairs[:count]


@dataclass(frozen=True)
class GoalPosterior:
    """Per-goal log-likelihoods and the normalized posterior (uniform prior)."""

    log_likelihoods: np.ndarray
    posterior: np.ndarray

    @property
    def prediction(self) -> int:
        """Most probable goal; ties break to the lowest index."""
        return int(np.argmax(self.posterior))


def _log_softmax_normalizer(rows: np.ndarray) -> np.ndarray:
    m = rows.max(axis=-1, keepdims=True)
    return (m + np.log(np.exp(rows - m).sum(axis=-1, keepdims=True)))[..., 0]


def goal_posterior(pairs_so_far, family: GoalMdpFamily, eta: float = 1.0,
                   tolerance: float = 1e-6) -> GoalPosterior:
    """Bayesian goal inference from Boltzmann action likelihoods.

    Each pair contributes ``eta * Q_n(x, a) - logsumexp_a(eta * Q_n(x, .))``
    to goal ``n``'s log-likelihood; with no pairs the posterior is uniform.
    """
    if eta <= 0:
        raise ValueError("eta must be positive")
    n = family.num_goals
    q = family.q_stack(tolerance)
    log_lik = np.zeros(n)
    pairs = list(pairs_so_far)
    if pairs:
        states = np.fromiter((s for s, _ in pairs), dtype=np.int64)
        actions = np.fromiter((a for _, a in pairs), dtype=np.int64)
        scaled = eta * q[:, states, :]  # (N, P, A)
        log_lik = (scaled[:, np.arange(len(pairs)), actions]
                   - _log_softmax_normalizer(scaled)).sum(axis=1)
    posterior = np.exp(log_lik - log_lik.max())
    posterior /= posterior.sum()
    return GoalPosterior(log_likelihoods=log_lik, posterior=posterior)


def _pair_log_likelihood(q: np.ndarray, pairs, eta: float) -> float:
    states = np.fromiter((s for s, _ in pairs), dtype=np.int64)
    actions = np.fromiter((a for _, a in pairs), dtype=np.int64)
    scaled = eta * q[states, :]
    return float((scaled[np.arange(len(states)), actions]
                  - _log_softmax_normalizer(scaled)).sum())


def girl_recover(demo: Demonstration, mdp_template: TabularMdp,
                 eta: float = 1.0, learning_rate: float = 1.0,
                 iterations: int = 80, tolerance: float = 1e-6) -> np.ndarray:
    """Recover a state-indexed reward by gradient ascent on the demo likelihood.

    The reward has one weight per state (shared across actions). Each
    iteration re-solves the MDP at the current reward and linearizes Q
    around the greedy policy to get the likelihood gradient; steps that
    would decrease the log-likelihood are halved up to 20 times before the
    run is declared divergent. Uses dense resolvents, so it is sized for
    teaching-scale mazes (hundreds of states), not the big benchmarks.
    """
    if learning_rate <= 0:
        raise ValueError("learning_rate must be positive")
    n_states = mdp_template.num_states
    n_actions = mdp_template.num_actions
    gamma = mdp_template.discount
    mats = [m.toarray() for m in mdp_template.kernel.action_matrices()]
    pairs = list(demo.pairs)

    def solve_at(w: np.ndarray):
        mdp = mdp_template.with_rewards(np.repeat(w[:, None], n_actions, axis=1))
        return value_iterate(mdp, tolerance)

    w = np.zeros(n_states)
    result = solve_at(w)
    log_lik = _pair_log_likelihood(result.q_table, pairs, eta)
    for _ in range(iterations):
        # dQ(x,a)/dw = e_x + gamma * P_a (I - gamma P_pi)^-1 under the
        # current greedy policy pi.
        pol = greedy_policy(result).matrix(n_actions)
        p_pi = sum(mats[a] * pol[:, a][:, None] for a in range(n_actions))
        resolvent = np.linalg.inv(np.eye(n_states) - gamma * p_pi)
        q_grad = [np.eye(n_states) + gamma * mats[a] @ resolvent
                  for a in range(n_actions)]
        grad = np.zeros(n_states)
        for x, a in pairs:
            probs = softmax_rows(result.q_table[x], eta)
            grad += eta * q_grad[a][x]
            for b in range(n_actions):
                grad -= eta * probs[b] * q_grad[b][x]
        step = learning_rate
        for halving in range(21):
            if halving == 20:
                raise Divergence(
                    "log-likelihood decreased for 20 consecutive halvings")
            candidate = w + step * grad
            cand_result = solve_at(candidate)
            cand_log_lik = _pair_log_likelihood(cand_result.q_table, pairs, eta)
            if cand_log_lik >= log_lik - 1e-6:
                w, result, log_lik = candidate, cand_result, cand_log_lik
                break
            step *= 0.5
    return w


_policy_cache: "weakref.WeakKeyDictionary[GoalMdpFamily, dict]" = \
    weakref.WeakKeyDictionary()


def teacher_policy(family: GoalMdpFamily, policy_type: str, goal: int,
                   beta: float = 1.0, tolerance: float = 1e-6) -> Policy:
    """Greedy teacher for one goal: plain optimal or legible. Cached."""
    if policy_type not in POLICY_TYPES:
        raise ValueError(f"unknown policy type {policy_type!r}")
    per_family = _policy_cache.setdefault(family, {})
    key = (policy_type, goal, beta, tolerance)
    if key not in per_family:
        if policy_type == "optimal":
            per_family[key] = greedy_policy(family.solve(tolerance)[goal])
        else:
            problem = LegibleProblem.from_family(family, goal, beta=beta,
                                                 tolerance=tolerance)
            _, policy = solve_legible(problem, tolerance)
            per_family[key] = policy
    return per_family[key]


def sample_demo_trajectories(family: GoalMdpFamily, policy_type: str,
                             start: int, goal: int, count: int = 10,
                             horizon: int = 20, rng_seed: int | None = None,
                             beta: float = 1.0) -> list[Demonstration]:
    """Greedy-policy rollouts as sequential demonstrations (default ten
    trajectories of up to twenty steps each)."""
    policy = teacher_policy(family, policy_type, goal, beta)
    mdp = family.mdps[goal]
    rng = np.random.default_rng(rng_seed)
    demos = []
    for _ in range(count):
        traj = rollout(mdp, policy, start, horizon, rng=rng)
        if len(traj) == 0:
            raise ValueError("demonstration start is already at the goal")
        demos.append(Demonstration(pairs=tuple(traj.pairs()),
                                   source_policy=policy_type, true_goal=goal))
    return demos


def sample_demo_states(family: GoalMdpFamily, policy_type: str, goal: int,
                       count: int = 20, rng_seed: int | None = None,
                       beta: float = 1.0) -> Demonstration:
    """Unlinked demonstration: uniform random free non-goal states, each
    paired with the teacher's greedy action for ``goal``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    spec = family.spec
    goal_cells = {cell for _, cell in spec.goals}
    candidates = [spec.state_index(c) for c in spec.free_cells()
                  if c not in goal_cells]
    if not candidates:
        raise ValueError("maze has no free non-goal cells to sample")
    policy = teacher_policy(family, policy_type, goal, beta)
    rng = np.random.default_rng(rng_seed)
    pairs = []
    for _ in range(count):
        state = candidates[int(rng.integers(len(candidates)))]
        pairs.append((state, policy.act(state)))
    return Demonstration(pairs=tuple(pairs), source_policy=policy_type,
                         true_goal=goal)
