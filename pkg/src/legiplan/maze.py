"""Grid mazes and the per-goal MDP family built on their shared dynamics.

Maze text format (bit-exact): newline-separated rows of equal length over
the alphabet ``#`` (wall), ``.`` (free), ``S`` (start, optional, at most
one) and ``A``..``J`` (goal cells, unique labels). A single trailing
newline is allowed; tabs are not.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

import numpy as np

from .errors import InfeasibleSampling, InvalidSpec, ParseError
from .mdp import SolveResult, TabularMdp, TransitionKernel, value_iterate

ACTION_NAMES = ("up", "down", "left", "right", "noop")
ACTION_DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1), (0, 0))
NUM_ACTIONS = len(ACTION_NAMES)
GOAL_ALPHABET = "ABCDEFGHIJ"


@dataclass(frozen=True)
class MazeSpec:
    """Grid layout, walls, labeled goal cells and the action-failure chance."""

    rows: int
    cols: int
    walls: frozenset
    goals: tuple  # ordered ("A", (r, c)) pairs, sorted by label
    failure_probability: float = 0.15
    default_start: tuple | None = None

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidSpec("maze must have at least one row and one column")
        if not 0.0 <= self.failure_probability < 1.0:
            raise InvalidSpec("failure_probability must lie in [0, 1)")
        labels = [lab for lab, _ in self.goals]
        if not 1 <= len(labels) <= len(GOAL_ALPHABET):
            raise InvalidSpec(f"need between 1 and {len(GOAL_ALPHABET)} goals, "
                              f"got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise InvalidSpec("goal labels must be unique")
        for cell in list(self.walls) + [c for _, c in self.goals] + \
                ([self.default_start] if self.default_start else []):
            r, c = cell
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise InvalidSpec(f"cell {cell} out of bounds")
        for lab, cell in self.goals:
            if cell in self.walls:
                raise InvalidSpec(f"goal {lab} sits on a wall at {cell}")
        if self.default_start is not None and self.default_start in self.walls:
            raise InvalidSpec(f"start cell {self.default_start} is a wall")

    @property
    def num_states(self) -> int:
        return self.rows * self.cols

    @property
    def goal_labels(self) -> tuple:
        return tuple(lab for lab, _ in self.goals)

    def goal_cell(self, label: str) -> tuple:
        for lab, cell in self.goals:
            if lab == label:
                return cell
        raise KeyError(label)

    def state_index(self, cell: tuple) -> int:
        r, c = cell
        return r * self.cols + c

    def cell(self, state: int) -> tuple:
        return divmod(int(state), self.cols)

    def is_free(self, cell: tuple) -> bool:
        r, c = cell
        return 0 <= r < self.rows and 0 <= c < self.cols and cell not in self.walls

    def free_cells(self) -> list:
        """All non-wall cells in row-major order (goal cells included)."""
        return [(r, c) for r in range(self.rows) for c in range(self.cols)
                if (r, c) not in self.walls]

    def with_failure(self, failure_probability: float) -> "MazeSpec":
        return replace(self, failure_probability=failure_probability)


def parse_maze(text: str, failure_probability: float = 0.15) -> MazeSpec:
    """Parse a maze text document into a :class:`MazeSpec`."""
    if not text:
        raise ParseError("maze document is empty")
    body = text[:-1] if text.endswith("\n") else text
    lines = body.split("\n")
    if not lines or not lines[0]:
        raise ParseError("maze document is empty")
    width = len(lines[0])
    walls = set()
    goals = {}
    start = None
    for r, line in enumerate(lines):
        if len(line) != width:
            raise ParseError(f"line {r} has length {len(line)}, expected {width}")
        for c, ch in enumerate(line):
            if ch == "#":
                walls.add((r, c))
            elif ch == ".":
                pass
            elif ch == "S":
                if start is not None:
                    raise ParseError(f"duplicate start cell at ({r}, {c})")
                start = (r, c)
            elif ch in GOAL_ALPHABET:
                if ch in goals:
                    raise ParseError(f"duplicate goal label {ch!r} at ({r}, {c})")
                goals[ch] = (r, c)
            else:
                raise ParseError(f"illegal character {ch!r} at ({r}, {c})")
    if not goals:
        raise ParseError("maze defines no goal cells")
    spec = MazeSpec(rows=len(lines), cols=width, walls=frozenset(walls),
                    goals=tuple(sorted(goals.items())),
                    failure_probability=failure_probability,
                    default_start=start)
    return spec


def render_maze(spec: MazeSpec) -> str:
    """Inverse of :func:`parse_maze`; round-trips bit-exactly."""
    grid = [["." for _ in range(spec.cols)] for _ in range(spec.rows)]
    for (r, c) in spec.walls:
        grid[r][c] = "#"
    if spec.default_start is not None:
        r, c = spec.default_start
        grid[r][c] = "S"
    for lab, (r, c) in spec.goals:
        grid[r][c] = lab
    return "\n".join("".join(row) for row in grid) + "\n"


def _intended_target(spec: MazeSpec, cell: tuple, action: int) -> tuple:
    """Destination on action success; the cell itself when blocked or noop."""
    dr, dc = ACTION_DELTAS[action]
    target = (cell[0] + dr, cell[1] + dc)
    return target if spec.is_free(target) else cell


def build_kernel(spec: MazeSpec) -> TransitionKernel:
    """Shared 5-action kernel: moves fail in place with ``failure_probability``.

    Wall and out-of-bounds moves stay put with probability 1, as does noop.
    Wall cells self-loop under every action (they are unreachable filler so
    that the state space is exactly ``rows * cols``).
    """
    f = spec.failure_probability
    success = 1.0 - f
    stay = 1.0 - success  # exact complement so each row sums to 1.0 exactly
    transitions = {}
    for r in range(spec.rows):
        for c in range(spec.cols):
            s = spec.state_index((r, c))
            for a in range(NUM_ACTIONS):
                if (r, c) in spec.walls:
                    transitions[(s, a)] = [(s, 1.0)]
                    continue
                target = _intended_target(spec, (r, c), a)
                if target == (r, c):
                    transitions[(s, a)] = [(s, 1.0)]
                elif f == 0.0:
                    transitions[(s, a)] = [(spec.state_index(target), 1.0)]
                else:
                    transitions[(s, a)] = [(spec.state_index(target), success),
                                           (s, stay)]
    return TransitionKernel.from_mapping(spec.num_states, NUM_ACTIONS, transitions)


def goal_rewards(spec: MazeSpec, label: str, goal_reward: float,
                 step_reward: float) -> np.ndarray:
    """Reward table for one goal: ``goal_reward`` on actions taken at the goal
    cell or whose success target is the goal cell, ``step_reward`` elsewhere."""
    goal = spec.goal_cell(label)
    table = np.full((spec.num_states, NUM_ACTIONS), float(step_reward))
    for r in range(spec.rows):
        for c in range(spec.cols):
            if (r, c) in spec.walls:
                continue
            s = spec.state_index((r, c))
            for a in range(NUM_ACTIONS):
                if (r, c) == goal or _intended_target(spec, (r, c), a) == goal:
                    table[s, a] = float(goal_reward)
    return table


class GoalMdpFamily:
    """One MDP per goal label, all sharing a single kernel object.

    Only rewards (and the terminal goal cell) differ between members, so
    structural identity of the kernels holds by construction. Per-goal
    optimal solves are cached on the instance; the family is otherwise
    immutable and safe to share read-only.
    """

    def __init__(self, spec: MazeSpec, discount: float = 0.9,
                 goal_reward: float = 1.0, step_reward: float = 0.0):
        self.spec = spec
        self.discount = float(discount)
        self.goal_reward = float(goal_reward)
        self.step_reward = float(step_reward)
        kernel = build_kernel(spec)
        self.labels = spec.goal_labels
        self.goal_states = tuple(spec.state_index(spec.goal_cell(lab))
                                 for lab in self.labels)
        self.mdps = [
            TabularMdp(kernel, goal_rewards(spec, lab, goal_reward, step_reward),
                       discount, terminal_states=(spec.state_index(spec.goal_cell(lab)),))
            for lab in self.labels
        ]
        self._solve_cache: dict[float, list[SolveResult]] = {}

    @property
    def kernel(self) -> TransitionKernel:
        return self.mdps[0].kernel

    @property
    def num_goals(self) -> int:
        return len(self.labels)

    def goal_index(self, label: str) -> int:
        return self.labels.index(label)

    def solve(self, tolerance: float = 1e-6) -> list[SolveResult]:
        """Optimal solve of every member; cached per tolerance."""
        if tolerance not in self._solve_cache:
            self._solve_cache[tolerance] = [value_iterate(m, tolerance)
                                            for m in self.mdps]
        return self._solve_cache[tolerance]

    def q_stack(self, tolerance: float = 1e-6) -> np.ndarray:
        """Per-goal optimal Q-tables stacked into ``(goals, states, actions)``."""
        return np.stack([res.q_table for res in self.solve(tolerance)])


def build_family(spec: MazeSpec, discount: float = 0.9, goal_reward: float = 1.0,
                 step_reward: float = 0.0) -> GoalMdpFamily:
    return GoalMdpFamily(spec, discount, goal_reward, step_reward)


def _free_neighbors(spec: MazeSpec, cell: tuple) -> Iterator[tuple]:
    for dr, dc in ACTION_DELTAS[:4]:
        nxt = (cell[0] + dr, cell[1] + dc)
        if spec.is_free(nxt):
            yield nxt


def unreachable_free_cells(spec: MazeSpec) -> set:
    """Free cells not connected to the first goal (movement is symmetric,
    so an empty result means every goal is reachable from every free cell)."""
    seen = {spec.goals[0][1]}
    frontier = [spec.goals[0][1]]
    while frontier:
        cell = frontier.pop()
        for nxt in _free_neighbors(spec, cell):
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return set(spec.free_cells()) - seen


def random_scenarios(spec: MazeSpec, count: int, rng_seed: int | None = None
                     ) -> list[tuple[int, str]]:
    """Uniform (start state, goal label) samples with start != goal cell."""
    if count < 1:
        raise ValueError("count must be at least 1")
    free = spec.free_cells()
    labels = spec.goal_labels
    feasible = any((r, c) != spec.goal_cell(lab)
                   for (r, c) in free for lab in labels)
    if not feasible:
        raise InfeasibleSampling("every free cell coincides with every goal cell")
    rng = np.random.default_rng(rng_seed)
    out: list[tuple[int, str]] = []
    while len(out) < count:
        cell = free[int(rng.integers(len(free)))]
        label = labels[int(rng.integers(len(labels)))]
        if cell == spec.goal_cell(label):
            continue
        out.append((spec.state_index(cell), label))
    return out
