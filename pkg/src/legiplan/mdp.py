"""Tabular MDPs and exact dynamic-programming solvers.

States and actions are integer indices. Transition kernels are stored
sparsely (per state-action successor lists), which keeps grid worlds with
a handful of successors per pair cheap even at thousands of states.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import InvalidModel, PlanningTimeout

PROB_ATOL = 1e-9


class TransitionKernel:
    """Sparse transition probabilities, shared read-only between MDPs.

    Rows are keyed by ``state * num_actions + action`` and stored CSR-style
    (``indptr`` / successor states / probabilities). Instances are immutable
    after construction and safe to share across threads and MDP families.
    """

    def __init__(self, num_states: int, num_actions: int,
                 indptr: np.ndarray, succ: np.ndarray, prob: np.ndarray):
        self.num_states = int(num_states)
        self.num_actions = int(num_actions)
        self.indptr = indptr
        self.succ = succ
        self.prob = prob
        self._cum = None
        self._matrices: list[sp.csr_matrix] | None = None
        self._validate()

    @classmethod
    def from_mapping(cls, num_states: int, num_actions: int,
                     transitions: Mapping[tuple[int, int], Sequence[tuple[int, float]]]
                     ) -> "TransitionKernel":
        """Build a kernel from a ``(state, action) -> [(next, prob), ...]`` map."""
        rows = num_states * num_actions
        indptr = np.zeros(rows + 1, dtype=np.int64)
        chunks_s: list[list[int]] = [[] for _ in range(rows)]
        chunks_p: list[list[float]] = [[] for _ in range(rows)]
        for (s, a), entries in transitions.items():
            if not (0 <= s < num_states and 0 <= a < num_actions):
                raise InvalidModel(f"transition key ({s}, {a}) out of range")
            row = s * num_actions + a
            for y, p in entries:
                chunks_s[row].append(int(y))
                chunks_p[row].append(float(p))
        counts = [len(c) for c in chunks_s]
        indptr[1:] = np.cumsum(counts)
        succ = np.fromiter((y for c in chunks_s for y in c), dtype=np.int64,
                           count=indptr[-1])
        prob = np.fromiter((p for c in chunks_p for p in c), dtype=np.float64,
                           count=indptr[-1])
        return cls(num_states, num_actions, indptr, succ, prob)

    def _validate(self) -> None:
        rows = self.num_states * self.num_actions
        if self.indptr.shape != (rows + 1,):
            raise InvalidModel("kernel indptr has wrong length")
        if self.succ.size and (self.succ.min() < 0 or self.succ.max() >= self.num_states):
            raise InvalidModel("kernel successor index out of range")
        if self.prob.size and self.prob.min() < 0.0:
            raise InvalidModel("kernel contains a negative probability")
        counts = np.diff(self.indptr)
        row_of = np.repeat(np.arange(rows), counts)
        sums = np.bincount(row_of, weights=self.prob, minlength=rows)
        bad = np.abs(sums - 1.0) > PROB_ATOL
        if bad.any():
            row = int(np.argmax(bad))
            s, a = divmod(row, self.num_actions)
            raise InvalidModel(
                f"transition row for state {s}, action {a} sums to {sums[row]!r}")

    def successors(self, state: int, action: int) -> tuple[np.ndarray, np.ndarray]:
        row = state * self.num_actions + action
        lo, hi = self.indptr[row], self.indptr[row + 1]
        return self.succ[lo:hi], self.prob[lo:hi]

    def probability(self, state: int, action: int, next_state: int) -> float:
        states, probs = self.successors(state, action)
        hits = probs[states == next_state]
        return float(hits.sum())

    def sample_next(self, state: int, action: int, rng: np.random.Generator) -> int:
        if self._cum is None:
            cum = np.copy(self.prob)
            for row in range(self.num_states * self.num_actions):
                lo, hi = self.indptr[row], self.indptr[row + 1]
                np.cumsum(self.prob[lo:hi], out=cum[lo:hi])
            self._cum = cum
        row = state * self.num_actions + action
        lo, hi = self.indptr[row], self.indptr[row + 1]
        if lo == hi:
            raise InvalidModel(f"no transitions defined for state {state}, action {action}")
        k = np.searchsorted(self._cum[lo:hi], rng.random(), side="right")
        return int(self.succ[lo + min(k, hi - lo - 1)])

    def action_matrices(self) -> list[sp.csr_matrix]:
        """One ``num_states x num_states`` CSR matrix per action."""
        if self._matrices is None:
            mats = []
            for a in range(self.num_actions):
                rows_idx = np.arange(self.num_states) * self.num_actions + a
                counts = self.indptr[rows_idx + 1] - self.indptr[rows_idx]
                indptr = np.zeros(self.num_states + 1, dtype=np.int64)
                indptr[1:] = np.cumsum(counts)
                take = np.concatenate([
                    np.arange(self.indptr[r], self.indptr[r + 1]) for r in rows_idx
                ]) if counts.sum() else np.zeros(0, dtype=np.int64)
                mats.append(sp.csr_matrix(
                    (self.prob[take], self.succ[take], indptr),
                    shape=(self.num_states, self.num_states)))
            self._matrices = mats
        return self._matrices

    def same_structure(self, other: "TransitionKernel") -> bool:
        """Bitwise equality of the sparse structure and probabilities."""
        return (self.num_states == other.num_states
                and self.num_actions == other.num_actions
                and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.succ, other.succ)
                and np.array_equal(self.prob, other.prob))


class TabularMdp:
    """Finite MDP: sparse kernel, dense ``(state, action)`` reward table, discount.

    ``terminal_states`` marks cells where episodes end (rollouts stop after
    entering one); the kernel itself is unaffected, so MDPs differing only
    in rewards can share one kernel object.
    """

    def __init__(self, kernel: TransitionKernel, rewards: np.ndarray,
                 discount: float, terminal_states: Iterable[int] = ()):
        rewards = np.asarray(rewards, dtype=np.float64)
        if rewards.shape != (kernel.num_states, kernel.num_actions):
            raise InvalidModel(
                f"reward table shape {rewards.shape} does not match "
                f"({kernel.num_states}, {kernel.num_actions})")
        if not (0.0 <= discount < 1.0):
            raise InvalidModel(f"discount must lie in [0, 1), got {discount}")
        self.kernel = kernel
        self.rewards = rewards
        self.discount = float(discount)
        self.terminal_states = frozenset(int(s) for s in terminal_states)
        for s in self.terminal_states:
            if not 0 <= s < kernel.num_states:
                raise InvalidModel(f"terminal state {s} out of range")

    @property
    def num_states(self) -> int:
        return self.kernel.num_states

    @property
    def num_actions(self) -> int:
        return self.kernel.num_actions

    @classmethod
    def from_mapping(cls, num_states: int, num_actions: int,
                     transitions: Mapping[tuple[int, int], Sequence[tuple[int, float]]],
                     rewards: np.ndarray, discount: float,
                     terminal_states: Iterable[int] = ()) -> "TabularMdp":
        kernel = TransitionKernel.from_mapping(num_states, num_actions, transitions)
        return cls(kernel, rewards, discount, terminal_states)

    def with_rewards(self, rewards: np.ndarray,
                     terminal_states: Iterable[int] | None = None) -> "TabularMdp":
        """New MDP sharing this kernel object (hence bitwise-equal structure)."""
        terms = self.terminal_states if terminal_states is None else terminal_states
        return TabularMdp(self.kernel, rewards, self.discount, terms)


@dataclass(frozen=True)
class SolveResult:
    """Optimal value function and Q-table for one MDP."""

    values: np.ndarray
    q_table: np.ndarray
    iterations: int
    residual: float
    tolerance: float
    residual_history: np.ndarray = field(repr=False, default=None)

    @property
    def converged(self) -> bool:
        return self.residual <= self.tolerance


@dataclass(frozen=True)
class Policy:
    """Deterministic (``actions``) or stochastic (``probs``) state-to-action map."""

    kind: str
    actions: np.ndarray | None = None
    probs: np.ndarray | None = None

    def __post_init__(self):
        if self.kind == "deterministic":
            if self.actions is None:
                raise InvalidModel("deterministic policy needs an action array")
        elif self.kind == "stochastic":
            if self.probs is None:
                raise InvalidModel("stochastic policy needs a probability matrix")
            rows = np.asarray(self.probs)
            if rows.min() < 0 or np.abs(rows.sum(axis=1) - 1.0).max() > PROB_ATOL:
                raise InvalidModel("stochastic policy rows must be a distribution")
        else:
            raise InvalidModel(f"unknown policy kind {self.kind!r}")

    def matrix(self, num_actions: int) -> np.ndarray:
        if self.kind == "deterministic":
            n = self.actions.shape[0]
            out = np.zeros((n, num_actions))
            out[np.arange(n), self.actions] = 1.0
            return out
        return np.asarray(self.probs)

    def act(self, state: int, rng: np.random.Generator | None = None) -> int:
        if self.kind == "deterministic":
            return int(self.actions[state])
        row = self.probs[state]
        return int(rng.choice(row.shape[0], p=row))


@dataclass(frozen=True)
class Trajectory:
    """Ordered (state, action) records; the record index is the timestamp.

    ``final_state`` is the state reached after the last recorded action,
    which belief simulations need to replay every observed transition.
    """

    states: tuple[int, ...]
    actions: tuple[int, ...]
    final_state: int | None = None
    true_goal: int | None = None
    policy_type: str | None = None

    def __len__(self) -> int:
        return len(self.states)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.states, self.actions))

    def tagged(self, true_goal: int | None = None,
               policy_type: str | None = None) -> "Trajectory":
        return replace(self, true_goal=true_goal, policy_type=policy_type)

    def state_sequence(self) -> tuple[int, ...]:
        """All visited states including the final one (length ``len + 1``)."""
        if self.final_state is None:
            return self.states
        return self.states + (self.final_state,)


def value_iterate(mdp: TabularMdp, tolerance: float = 1e-6,
                  max_iterations: int = 10_000,
                  deadline: float | None = None) -> SolveResult:
    """Exact value iteration to a max-norm Bellman residual of ``tolerance``.

    Stops after ``max_iterations`` sweeps regardless, reporting the achieved
    residual; non-convergence is for the caller to judge. ``deadline`` is an
    optional ``time.monotonic()`` instant for cooperative timeouts.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    mats = mdp.kernel.action_matrices()
    v = np.zeros(mdp.num_states)
    q = np.zeros((mdp.num_states, mdp.num_actions))
    history: list[float] = []
    residual = np.inf
    it = 0
    while it < max_iterations:
        for a in range(mdp.num_actions):
            q[:, a] = mdp.rewards[:, a] + mdp.discount * (mats[a] @ v)
        v_new = q.max(axis=1)
        residual = float(np.abs(v_new - v).max())
        history.append(residual)
        v = v_new
        it += 1
        if residual <= tolerance:
            break
        if deadline is not None and time.monotonic() > deadline:
            raise PlanningTimeout(
                f"value iteration exceeded its deadline after {it} sweeps")
    return SolveResult(values=v, q_table=q, iterations=it, residual=residual,
                       tolerance=tolerance, residual_history=np.asarray(history))


def greedy_policy(result: SolveResult) -> Policy:
    """Deterministic argmax policy; ties break to the lowest action index."""
    return Policy(kind="deterministic",
                  actions=np.argmax(result.q_table, axis=1).astype(np.int64))


def boltzmann_policy(result: SolveResult, temperature_inverse: float) -> Policy:
    """Stochastic policy with probabilities proportional to exp(eta * q)."""
    if temperature_inverse < 0:
        raise ValueError("temperature_inverse must be nonnegative")
    return Policy(kind="stochastic",
                  probs=softmax_rows(result.q_table, temperature_inverse))


def softmax_rows(table: np.ndarray, scale: float) -> np.ndarray:
    """Row-wise softmax of ``scale * table`` with max-subtraction."""
    z = scale * np.asarray(table, dtype=np.float64)
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def policy_evaluation(mdp: TabularMdp, policy: Policy) -> np.ndarray:
    """Exact discounted value of ``policy``: solves (I - gamma P_pi) v = r_pi."""
    pol = policy.matrix(mdp.num_actions)
    mats = mdp.kernel.action_matrices()
    r_pi = (pol * mdp.rewards).sum(axis=1)
    p_pi = sum(mats[a].multiply(pol[:, a][:, None]) for a in range(mdp.num_actions))
    lhs = sp.identity(mdp.num_states, format="csc") - mdp.discount * sp.csc_matrix(p_pi)
    return spla.spsolve(lhs, r_pi)


def rollout(mdp: TabularMdp, policy: Policy, start: int, horizon: int,
            rng_seed: int | None = None,
            rng: np.random.Generator | None = None) -> Trajectory:
    """Sample up to ``horizon`` (state, action) records, stopping on terminal entry.

    Reproducible: the same seed yields an identical trajectory.
    """
    if not 0 <= start < mdp.num_states:
        raise ValueError(f"start state {start} out of range")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if rng is None:
        rng = np.random.default_rng(rng_seed)
    states: list[int] = []
    actions: list[int] = []
    x = int(start)
    final = x
    for _ in range(horizon):
        if x in mdp.terminal_states:
            break
        a = policy.act(x, rng)
        states.append(x)
        actions.append(a)
        x = mdp.kernel.sample_next(x, a, rng)
        final = x
        if x in mdp.terminal_states:
            break
    return Trajectory(states=tuple(states), actions=tuple(actions),
                      final_state=final)
