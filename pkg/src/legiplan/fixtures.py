"""Shipped benchmark mazes.

Wall layouts are procedurally generated from fixed seeds (the layouts the
benchmark sizes come from are not published anywhere reusable), so results
on them are comparable run-to-run and trend-comparable across machines.
Every fixture is connectivity-checked at build time: all goals reachable
from all free cells.
"""

from __future__ import annotations

import numpy as np

from .errors import FixtureMissing
from .maze import MazeSpec, parse_maze, unreachable_free_cells

_STATE_SCALING = (
    ("5x8", 5, 8, 3, 101),
    ("10x10", 10, 10, 6, 102),
    ("25x25", 25, 25, 6, 103),
    ("40x40", 40, 40, 6, 104),
    ("50x50", 50, 50, 6, 105),
    ("60x60", 60, 60, 6, 106),
    ("75x75", 75, 75, 6, 107),
)

_GOAL_SCALING_SEED = 331
_IRL_SEEDS = (405, 406, 409, 412)

# Two open rows detour around a walled corridor; the straight route to B
# runs through A's cell, so plain optimal behaviour is ambiguous early on.
_FIG1_TEXT = """\
.......
.#####.
S..A..B
.#####.
.......
"""

_CORRIDOR_TEXT = "A.....B\n"

_cache: dict[str, MazeSpec] = {}


def _bfs_distances(rows: int, cols: int, free: np.ndarray, source: tuple) -> np.ndarray:
    dist = np.full((rows, cols), -1, dtype=np.int64)
    dist[source] = 0
    frontier = [source]
    while frontier:
        nxt = []
        for (r, c) in frontier:
            for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if 0 <= rr < rows and 0 <= cc < cols and free[rr, cc] \
                        and dist[rr, cc] < 0:
                    dist[rr, cc] = dist[r, c] + 1
                    nxt.append((rr, cc))
        frontier = nxt
    return dist


def random_maze(rows: int, cols: int, num_goals: int, seed: int,
                wall_density: float = 0.16,
                failure_probability: float = 0.15) -> MazeSpec:
    """Seeded maze with connected free space and spread-out goals.

    Goals are placed by farthest-point sampling on BFS distances, which
    keeps them scattered the way the benchmark scenario calls for.
    """
    rng = np.random.default_rng(seed)
    for _ in range(200):
        free = rng.random((rows, cols)) >= wall_density
        free_cells = [(r, c) for r in range(rows) for c in range(cols) if free[r, c]]
        if len(free_cells) < num_goals + 2:
            continue
        dist = _bfs_distances(rows, cols, free, free_cells[0])
        if any(dist[cell] < 0 for cell in free_cells):
            continue
        goals = [free_cells[int(rng.integers(len(free_cells)))]]
        dists = [_bfs_distances(rows, cols, free, goals[0])]
        while len(goals) < num_goals:
            min_dist = np.minimum.reduce([d for d in dists])
            min_dist = np.where(free, min_dist, -1)
            cand = np.argwhere(min_dist == min_dist.max())
            cell = tuple(cand[int(rng.integers(len(cand)))])
            goals.append(cell)
            dists.append(_bfs_distances(rows, cols, free, cell))
        walls = frozenset((r, c) for r in range(rows) for c in range(cols)
                          if not free[r, c])
        labels = "ABCDEFGHIJ"[:num_goals]
        spec = MazeSpec(rows=rows, cols=cols, walls=walls,
                        goals=tuple(zip(labels, (tuple(map(int, g)) for g in goals))),
                        failure_probability=failure_probability)
        if not unreachable_free_cells(spec):
            return spec
    raise FixtureMissing(
        f"could not generate a connected {rows}x{cols} maze from seed {seed}")


def corridor_maze(length: int = 7, failure_probability: float = 0.15) -> MazeSpec:
    """Two-goal 1 x ``length`` corridor, goals at both ends."""
    if length < 3:
        raise ValueError("corridor needs at least 3 cells")
    text = "A" + "." * (length - 2) + "B\n"
    return parse_maze(text, failure_probability=failure_probability)


def fig1_maze(failure_probability: float = 0.15) -> MazeSpec:
    """Adversarial two-goal maze: the short route to B passes through A."""
    return parse_maze(_FIG1_TEXT, failure_probability=failure_probability)


def state_scaling_fixtures() -> dict[str, MazeSpec]:
    """The seven size-scaling mazes (40 to 5625 states; 3 goals on the
    smallest, 6 on the rest)."""
    return {name: fixture(name) for name, *_ in _STATE_SCALING}


def goal_scaling_fixtures() -> dict[str, MazeSpec]:
    """One 25x25 layout with nested goal sets of size 3..10."""
    return {f"25x25-g{k}": fixture(f"25x25-g{k}") for k in range(3, 11)}


def irl_fixtures() -> dict[str, MazeSpec]:
    """Four 10x10 six-goal mazes for the goal-inference experiments."""
    return {f"irl-{i}": fixture(f"irl-{i}") for i in range(1, 5)}


def _build(name: str) -> MazeSpec:
    if name == "corridor":
        return corridor_maze()
    if name == "fig1":
        return fig1_maze()
    for fix_name, rows, cols, goals, seed in _STATE_SCALING:
        if name == fix_name:
            return random_maze(rows, cols, goals, seed)
    if name.startswith("25x25-g"):
        k = int(name.removeprefix("25x25-g"))
        if 3 <= k <= 10:
            base = random_maze(25, 25, 10, _GOAL_SCALING_SEED)
            return MazeSpec(rows=base.rows, cols=base.cols, walls=base.walls,
                            goals=base.goals[:k],
                            failure_probability=base.failure_probability)
    if name.startswith("irl-"):
        i = int(name.removeprefix("irl-"))
        if 1 <= i <= len(_IRL_SEEDS):
            return random_maze(10, 10, 6, _IRL_SEEDS[i - 1])
    raise FixtureMissing(f"unknown maze fixture {name!r}")


def fixture(name: str) -> MazeSpec:
    """Look up a shipped maze by name; see :func:`fixture_names`."""
    if name not in _cache:
        _cache[name] = _build(name)
    return _cache[name]


def fixture_names() -> list[str]:
    names = ["corridor", "fig1"]
    names += [n for n, *_ in _STATE_SCALING]
    names += [f"25x25-g{k}" for k in range(3, 11)]
    names += [f"irl-{i}" for i in range(1, 5)]
    return names
