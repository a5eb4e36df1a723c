"""Benchmark harness: scalability runs, teaching curves, episode export.

Owns every on-disk schema. The comparison CSV header is bit-exact and every
row carries the full config fingerprint, so PoL-MDP rows are reproducible
run-to-run (wall-clock ``seconds`` excepted: timing jitter is physical).
"""

from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import (FixtureMissing, InsufficientSamples, LegiplanError,
                     PlanningTimeout)
from .fixtures import fixture, fixture_names
from .irl import goal_posterior, sample_demo_states, sample_demo_trajectories
from .legibility import LegibleProblem, solve_legible
from .maze import ACTION_NAMES, GoalMdpFamily, MazeSpec, build_family, \
    random_scenarios
from .mdp import Trajectory, greedy_policy, rollout
from .metrics import miura_legibility, polmdp_legibility
from .observer import UctConfig, lmdp_rollout, observer_model

CSV_HEADER = ("experiment,framework,maze,goals,states,sample_id,start,goal,"
              "success,seconds,leg_polmdp,leg_miura_kl,leg_miura_euclid,"
              "seed,beta,gamma,eta,notes")
IRL_HEADER = ("experiment,teacher,samples_revealed,accuracy,stderr,scenarios,"
              "seed,beta,gamma,eta")
RESPONSE_HEADER = ("participant_id,episode_id,policy_type,stop_time_secs,"
                   "predicted_goal,true_goal,correct,confidence_1_7")

GOAL_SCALING_FIXTURES = tuple(f"25x25-g{k}" for k in range(3, 11))
STATE_SCALING_FIXTURES = ("5x8", "10x10", "25x25", "40x40", "50x50", "60x60",
                          "75x75")
IRL_FIXTURES = ("irl-1", "irl-2", "irl-3", "irl-4")

GOAL_COLORS = {
    "A": "#e6194b", "B": "#4363d8", "C": "#3cb44b", "D": "#ffe119",
    "E": "#f58231", "F": "#911eb4", "G": "#42d4f4", "H": "#f032e6",
    "I": "#469990", "J": "#9a6324",
}


def planner_discount(num_states: int, default: float = 0.9) -> float:
    """Per-size discount: the effective horizon must cover the maze diameter
    or distant goals vanish below the solver's resolution."""
    if num_states <= 625:
        return default
    if num_states <= 2500:
        return max(default, 0.95)
    return max(default, 0.97)


def planner_tolerance(discount: float) -> float:
    """Tighter tolerance at high discounts: value error scales like
    residual / (1 - gamma)."""
    if discount <= 0.9:
        return 1e-6
    if discount <= 0.95:
        return 1e-8
    return 1e-9


def episode_horizon(spec: MazeSpec) -> int:
    return 4 * (spec.rows + spec.cols)


def desk_uct_iterations(num_states: int, paper_scale: bool) -> int:
    """The paper-scale search budget everywhere is a multi-hour run; desk
    scale keeps it only where the baseline actually succeeds."""
    if paper_scale or num_states <= 48:
        return 2000
    if num_states <= 100:
        return 1000
    if num_states <= 1000:
        return 400
    return 150


@dataclass(frozen=True)
class BenchRun:
    """One benchmark invocation: experiment id, fixtures, budgets, seeds.

    ``workers`` > 1 dispatches samples to a process pool (rows still come
    out in sample order through the single sink, and per-sample seeds are
    schedule-independent, so results match a serial run field-for-field);
    measured seconds then include scheduling contention, so keep the
    default of 1 when timing comparisons matter.
    """

    experiment: str
    mazes: tuple = ()
    samples: int = 10
    timeout_secs: float = 300.0
    seed: int = 0
    beta: float = 1.0
    gamma: float = 0.9
    eta: float = 1.0
    out_dir: Path = Path("bench-out")
    paper_scale: bool = False
    episode_pool: int = 37
    export_maze: str = "10x10"
    scenarios: int = 50
    workers: int = 1

    def __post_init__(self):
        if self.timeout_secs <= 0:
            raise LegiplanError("timeout must be positive")
        if self.samples < 1:
            raise LegiplanError("sample count must be at least 1")
        object.__setattr__(self, "out_dir", Path(self.out_dir))

    def resolved(self) -> "BenchRun":
        if self.paper_scale:
            return replace(self, samples=max(self.samples, 250),
                           scenarios=max(self.scenarios, 250),
                           timeout_secs=max(self.timeout_secs, 7200.0))
        return self


def _fixture_or_die(name: str) -> MazeSpec:
    if name not in fixture_names():
        raise FixtureMissing(f"unknown maze fixture {name!r}; "
                             f"known: {', '.join(fixture_names())}")
    return fixture(name)


def _sample_seed(config: BenchRun, *key: int) -> int:
    ss = np.random.SeedSequence(entropy=config.seed, spawn_key=tuple(key))
    return int(ss.generate_state(1)[0])


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass
class SampleOutcome:
    success: bool
    seconds: float
    trajectory: Trajectory | None
    note: str = ""


def _score_row(config: BenchRun, experiment: str, framework: str, maze: str,
               family: GoalMdpFamily, sample_id: int, start: int, goal: str,
               outcome: SampleOutcome, note: str) -> list[str]:
    spec = family.spec
    leg_pol = leg_kl = leg_euc = None
    if outcome.success and outcome.trajectory is not None:
        goal_idx = family.goal_index(goal)
        problem = LegibleProblem.from_family(
            family, goal_idx, beta=config.beta,
            tolerance=planner_tolerance(family.discount))
        leg_pol = polmdp_legibility(outcome.trajectory, problem)
        leg_kl = miura_legibility(outcome.trajectory, family, goal_idx,
                                  observer_eta=config.eta, kind="kl")
        leg_euc = miura_legibility(outcome.trajectory, family, goal_idx,
                                   observer_eta=config.eta, kind="euclidean")
    return [experiment, framework, maze, str(family.num_goals),
            str(spec.num_states), str(sample_id), str(start), goal,
            _fmt(outcome.success), f"{outcome.seconds:.6f}", _fmt(leg_pol),
            _fmt(leg_kl), _fmt(leg_euc), str(config.seed), _fmt(config.beta),
            _fmt(family.discount), _fmt(config.eta),
            ";".join(x for x in (note, outcome.note) if x)]


def run_polmdp_sample(family: GoalMdpFamily, start: int, goal_index: int,
                      beta: float, timeout_secs: float, rng_seed: int,
                      horizon: int) -> SampleOutcome:
    """Plan with the legible MDP and roll its greedy policy to the goal.

    The per-goal task Q-tables are shared model construction (the observer
    baseline consumes the same tables), so they stay outside the clock;
    building and solving the legible MDP is the framework's planning work.
    """
    tolerance = planner_tolerance(family.discount)
    family.q_stack(tolerance)  # warm the shared cache outside the clock
    begin = time.perf_counter()
    deadline = time.monotonic() + timeout_secs
    try:
        problem = LegibleProblem.from_family(family, goal_index, beta=beta,
                                             tolerance=tolerance)
        _, policy = solve_legible(problem, tolerance=tolerance,
                                  deadline=deadline)
        trajectory = rollout(family.mdps[goal_index], policy, start, horizon,
                             rng_seed=rng_seed)
    except PlanningTimeout:
        return SampleOutcome(False, time.perf_counter() - begin, None,
                             "timeout")
    seconds = time.perf_counter() - begin
    trajectory = trajectory.tagged(true_goal=goal_index,
                                   policy_type="legible")
    if trajectory.final_state != family.goal_states[goal_index]:
        return SampleOutcome(False, seconds, trajectory, "horizon-exhausted")
    if seconds > timeout_secs:
        return SampleOutcome(False, seconds, trajectory, "timeout")
    return SampleOutcome(True, seconds, trajectory)


def run_lmdp_sample(family: GoalMdpFamily, start: int, goal_index: int,
                    eta: float, uct: UctConfig, timeout_secs: float,
                    horizon: int) -> SampleOutcome:
    """One online-baseline episode under the same wall-clock budget."""
    observer_model(family, eta)  # shared model construction, off the clock
    begin = time.perf_counter()
    try:
        trajectory, _ = lmdp_rollout(start, goal_index, family, uct, horizon,
                                     observer_eta=eta,
                                     time_budget_secs=timeout_secs)
    except PlanningTimeout:
        return SampleOutcome(False, time.perf_counter() - begin, None,
                             "timeout")
    seconds = time.perf_counter() - begin
    if trajectory.final_state != family.goal_states[goal_index]:
        return SampleOutcome(False, seconds, trajectory, "horizon-exhausted")
    return SampleOutcome(True, seconds, trajectory)


class _RowSink:
    """Append-only CSV writer flushing after every row, so a crash loses at
    most the row being written."""

    def __init__(self, path: Path, header: str):
        path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(path, "w", newline="")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(header.split(","))
        self._fh.flush()
        self.path = path

    def write(self, row: list[str]) -> None:
        self._writer.writerow(row)
        self._fh.flush()

    def close(self) -> None:
        self._fh.close()


_family_cache: dict[tuple, GoalMdpFamily] = {}


def _cached_family(maze_name: str, gamma: float) -> GoalMdpFamily:
    key = (maze_name, gamma)
    if key not in _family_cache:
        _family_cache[key] = build_family(_fixture_or_die(maze_name),
                                          discount=gamma)
    return _family_cache[key]


def _run_sample_pair(config: BenchRun, experiment: str, maze_name: str,
                     maze_idx: int, sample_id: int, start: int,
                     goal: str) -> tuple[list[str], list[str]]:
    """Both frameworks on one (start, goal) sample; returns the two rows."""
    spec = _fixture_or_die(maze_name)
    gamma = planner_discount(spec.num_states, config.gamma)
    family = _cached_family(maze_name, gamma)
    horizon = episode_horizon(spec)
    iters = desk_uct_iterations(spec.num_states, config.paper_scale)
    goal_idx = family.goal_index(goal)
    pol_outcome = run_polmdp_sample(
        family, start, goal_idx, config.beta, config.timeout_secs,
        _sample_seed(config, maze_idx, sample_id, 1), horizon)
    pol_row = _score_row(config, experiment, "polmdp", maze_name, family,
                         sample_id, start, goal, pol_outcome, "")
    uct = UctConfig(iterations_per_step=iters,
                    rng_seed=_sample_seed(config, maze_idx, sample_id, 2))
    lmdp_outcome = run_lmdp_sample(family, start, goal_idx, config.eta, uct,
                                   config.timeout_secs, horizon)
    uct_note = (f"uct={iters}/{math.sqrt(2):.3f}/25/random/kl/1.0;"
                f"horizon={horizon}")
    lmdp_row = _score_row(config, experiment, "lmdp", maze_name, family,
                          sample_id, start, goal, lmdp_outcome, uct_note)
    return pol_row, lmdp_row


def _comparison_run(config: BenchRun, experiment: str,
                    maze_names: tuple) -> Path:
    config = config.resolved()
    out_path = config.out_dir / f"{experiment}.csv"
    tasks = []
    for maze_idx, name in enumerate(maze_names):
        spec = _fixture_or_die(name)
        scen = random_scenarios(spec, config.samples,
                                rng_seed=_sample_seed(config, maze_idx, 0))
        for sample_id, (start, goal) in enumerate(scen):
            tasks.append((name, maze_idx, sample_id, start, goal))
    sink = _RowSink(out_path, CSV_HEADER)
    try:
        if config.workers <= 1:
            for task in tasks:
                for row in _run_sample_pair(config, experiment, *task):
                    sink.write(row)
        else:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                futures = [pool.submit(_run_sample_pair, config, experiment,
                                       *task) for task in tasks]
                for future in futures:
                    for row in future.result():
                        sink.write(row)
    finally:
        sink.close()
    return out_path


def run_goal_scaling(config: BenchRun) -> Path:
    """Both frameworks over the 25x25 maze at 3..10 goals."""
    mazes = config.mazes or GOAL_SCALING_FIXTURES
    return _comparison_run(config, "goal-scaling", tuple(mazes))


def run_state_scaling(config: BenchRun) -> Path:
    """Both frameworks over the seven size fixtures (40 to 5625 states)."""
    mazes = config.mazes or STATE_SCALING_FIXTURES
    return _comparison_run(config, "state-scaling", tuple(mazes))


def _read_rows(path: Path) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER.split(","):
            raise LegiplanError(f"unexpected CSV header in {path}")
        return list(reader)


def balance_results(raw_csv: Path, per_config_quota: int,
                    out_path: Path | None = None) -> Path:
    """Keep, per configuration, the fastest ``quota`` samples on which both
    frameworks succeeded (larger sets are truncated by joint execution time).

    Raises :class:`InsufficientSamples` naming the achievable per-config
    quota when some configuration cannot fill the request.
    """
    raw_csv = Path(raw_csv)
    if per_config_quota < 1:
        raise LegiplanError("quota must be at least 1")
    rows = _read_rows(raw_csv)
    grouped: dict[tuple, dict[str, dict[str, dict]]] = {}
    for row in rows:
        cfg = (row["experiment"], row["maze"])
        grouped.setdefault(cfg, {}).setdefault(row["sample_id"], {})[
            row["framework"]] = row
    kept: list[dict] = []
    achievable: dict = {}
    for cfg in grouped:
        paired = {
            sid: frameworks for sid, frameworks in grouped[cfg].items()
            if len(frameworks) == 2
            and all(r["success"] == "true" for r in frameworks.values())
        }
        achievable[cfg] = len(paired)
    short = {cfg: n for cfg, n in achievable.items() if n < per_config_quota}
    if short:
        worst = min(short.values())
        raise InsufficientSamples(
            f"only {worst} paired successes in the smallest configuration "
            f"(requested {per_config_quota}); achievable quotas: {short}",
            achievable=achievable)
    for cfg in grouped:
        paired = [
            (sid, frameworks) for sid, frameworks in grouped[cfg].items()
            if len(frameworks) == 2
            and all(r["success"] == "true" for r in frameworks.values())
        ]
        paired.sort(key=lambda item: (
            float(item[1]["polmdp"]["seconds"])
            + float(item[1]["lmdp"]["seconds"]), int(item[0])))
        for sid, frameworks in sorted(paired[:per_config_quota],
                                      key=lambda item: int(item[0])):
            kept.append(frameworks["polmdp"])
            kept.append(frameworks["lmdp"])
    if out_path is None:
        out_path = raw_csv.with_name(raw_csv.stem + "-balanced.csv")
    sink = _RowSink(Path(out_path), CSV_HEADER)
    try:
        for row in kept:
            sink.write([row[col] for col in CSV_HEADER.split(",")])
    finally:
        sink.close()
    return Path(out_path)


def run_irl_experiments(config: BenchRun) -> Path:
    """Teaching curves: goal-prediction accuracy vs revealed pair count,
    for both teacher policies, in the sequential-trajectory and the
    unlinked-samples condition."""
    config = config.resolved()
    condition = config.experiment
    if condition not in ("irl-trajectory", "irl-samples"):
        raise LegiplanError(f"not an irl experiment: {condition}")
    mazes = config.mazes or IRL_FIXTURES
    reveal_max = 20
    out_path = config.out_dir / f"{condition}.csv"
    sink = _RowSink(out_path, IRL_HEADER)
    try:
        for teacher_idx, teacher in enumerate(("legible", "optimal")):
            hits = np.zeros(reveal_max)
            trials = np.zeros(reveal_max)
            for maze_idx, name in enumerate(mazes):
                spec = _fixture_or_die(name)
                family = build_family(spec, discount=config.gamma)
                scen = random_scenarios(
                    spec, config.scenarios,
                    rng_seed=_sample_seed(config, 7, maze_idx))
                demos_per_scenario = 10 if config.paper_scale else 1
                for i, (start, goal_label) in enumerate(scen):
                    goal = family.goal_index(goal_label)
                    demo_seed = _sample_seed(config, 8, maze_idx, i,
                                             teacher_idx)
                    if condition == "irl-trajectory":
                        demos = sample_demo_trajectories(
                            family, teacher, start, goal,
                            count=demos_per_scenario, horizon=reveal_max,
                            rng_seed=demo_seed, beta=config.beta)
                    else:
                        demos = [sample_demo_states(
                            family, teacher, goal, count=reveal_max,
                            rng_seed=demo_seed, beta=config.beta)]
                    for demo in demos:
                        prediction = None
                        for k in range(1, reveal_max + 1):
                            if k <= len(demo.pairs):
                                prediction = goal_posterior(
                                    demo.prefix(k), family,
                                    eta=config.eta).prediction
                            hits[k - 1] += prediction == goal
                            trials[k - 1] += 1
            accuracy = hits / trials
            stderr = np.sqrt(accuracy * (1 - accuracy) / trials)
            for k in range(reveal_max):
                sink.write([condition, teacher, str(k + 1),
                            repr(float(accuracy[k])), repr(float(stderr[k])),
                            str(int(trials[k])), str(config.seed),
                            _fmt(config.beta), _fmt(config.gamma),
                            _fmt(config.eta)])
    finally:
        sink.close()
    return out_path


def trajectory_to_episode(spec: MazeSpec, trajectory: Trajectory,
                          true_goal_label: str, policy_type: str,
                          meta: dict) -> dict:
    """Serialize one rollout as the episode JSON document."""
    steps = []
    for t, (state, action) in enumerate(trajectory.pairs()):
        r, c = spec.cell(state)
        steps.append({"t": t, "cell": [r, c], "action": ACTION_NAMES[action]})
    if trajectory.final_state is not None:
        r, c = spec.cell(trajectory.final_state)
        steps.append({"t": len(trajectory), "cell": [r, c], "action": "noop"})
    return {
        "maze": {
            "rows": spec.rows,
            "cols": spec.cols,
            "walls": sorted([list(w) for w in spec.walls]),
            "goals": {label: {"cell": list(cell),
                              "color": GOAL_COLORS[label]}
                      for label, cell in spec.goals},
        },
        "start": list(spec.cell(trajectory.states[0])),
        "true_goal": true_goal_label,
        "policy_type": policy_type,
        "steps": steps,
        "meta": meta,
    }


def validate_episode(doc: dict) -> list[str]:
    """Schema and kernel-membership validation; returns problem strings."""
    problems: list[str] = []
    maze = doc.get("maze", {})
    try:
        spec = MazeSpec(
            rows=maze["rows"], cols=maze["cols"],
            walls=frozenset(tuple(w) for w in maze["walls"]),
            goals=tuple(sorted((label, tuple(entry["cell"]))
                               for label, entry in maze["goals"].items())))
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        return [f"maze block invalid: {exc}"]
    if doc.get("true_goal") not in dict(spec.goals):
        problems.append(f"true_goal {doc.get('true_goal')!r} not in goals")
    if doc.get("policy_type") not in ("legible", "optimal"):
        problems.append(f"policy_type {doc.get('policy_type')!r} invalid")
    steps = doc.get("steps", [])
    if not steps:
        problems.append("episode has no steps")
        return problems
    kernel = build_family(spec).kernel
    start = doc.get("start")
    if list(steps[0]["cell"]) != list(start):
        problems.append("step 0 does not match start")
    for i, step in enumerate(steps):
        r, c = step["cell"]
        if not (0 <= r < spec.rows and 0 <= c < spec.cols):
            problems.append(f"step {i} leaves the grid")
            continue
        if (r, c) in spec.walls:
            problems.append(f"step {i} sits on a wall")
        if step["action"] not in ACTION_NAMES:
            problems.append(f"step {i} has unknown action {step['action']!r}")
    for i in range(len(steps) - 1):
        a = ACTION_NAMES.index(steps[i]["action"])
        s = spec.state_index(tuple(steps[i]["cell"]))
        y = spec.state_index(tuple(steps[i + 1]["cell"]))
        if kernel.probability(s, a, y) <= 0.0:
            problems.append(f"step {i} -> {i + 1} has zero kernel probability")
    return problems


def export_episodes(config: BenchRun) -> Path:
    """Seeded episode pools (default 37 per condition) for the guessing game."""
    config = config.resolved()
    spec = _fixture_or_die(config.export_maze)
    family = build_family(spec, discount=config.gamma)
    out_root = config.out_dir / "episodes"
    pool = config.episode_pool
    horizon = episode_horizon(spec)
    for cond_idx, condition in enumerate(("legible", "optimal")):
        cond_dir = out_root / condition
        cond_dir.mkdir(parents=True, exist_ok=True)
        scen = random_scenarios(spec, pool,
                                rng_seed=_sample_seed(config, 40, cond_idx))
        manifest = []
        for i, (start, goal_label) in enumerate(scen):
            goal = family.goal_index(goal_label)
            if condition == "legible":
                problem = LegibleProblem.from_family(family, goal,
                                                     beta=config.beta)
                _, policy = solve_legible(problem)
            else:
                policy = greedy_policy(family.solve()[goal])
            seed = _sample_seed(config, 41, cond_idx, i)
            trajectory = rollout(family.mdps[goal], policy, start, horizon,
                                 rng_seed=seed)
            doc = trajectory_to_episode(
                spec, trajectory, goal_label, condition,
                meta={"beta": config.beta, "gamma": family.discount,
                      "seed": seed})
            problems = validate_episode(doc)
            if problems:
                raise LegiplanError(
                    f"episode {condition}/{i} failed validation: {problems}")
            name = f"episode-{i:03d}.json"
            try:
                with open(cond_dir / name, "w") as fh:
                    json.dump(doc, fh, indent=1)
            except OSError as exc:
                raise LegiplanError(f"cannot write {cond_dir / name}: {exc}")
            manifest.append(name)
        with open(cond_dir / "manifest.json", "w") as fh:
            json.dump({"condition": condition, "episodes": manifest}, fh,
                      indent=1)
    return out_root


@dataclass
class ResponseSummary:
    """Aggregate of one policy condition's guessing-game responses."""

    policy_type: str
    responses: int
    correct: int
    mean_stop_time: float
    mean_confidence: float

    @property
    def accuracy(self) -> float:
        return self.correct / self.responses if self.responses else 0.0


def aggregate_responses(csv_path: Path) -> dict[str, ResponseSummary]:
    """Parse a guessing-game response log into per-condition summaries.

    Raises on any malformed row so UI exports that do not round-trip are
    caught loudly rather than silently skewing the aggregate.
    """
    csv_path = Path(csv_path)
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != RESPONSE_HEADER.split(","):
            raise LegiplanError(
                f"unexpected response-log header in {csv_path}: "
                f"{reader.fieldnames}")
        buckets: dict[str, list[dict]] = {}
        for i, row in enumerate(reader):
            if row["policy_type"] not in ("legible", "optimal"):
                raise LegiplanError(f"row {i}: bad policy_type "
                                    f"{row['policy_type']!r}")
            confidence = int(row["confidence_1_7"])
            if not 1 <= confidence <= 7:
                raise LegiplanError(f"row {i}: confidence {confidence} "
                                    "outside 1..7")
            stop = float(row["stop_time_secs"])
            if stop < 0:
                raise LegiplanError(f"row {i}: negative stop time")
            correct = row["correct"].lower()
            if correct not in ("true", "false"):
                raise LegiplanError(f"row {i}: bad correct flag "
                                    f"{row['correct']!r}")
            if (row["predicted_goal"] == row["true_goal"]) != \
                    (correct == "true"):
                raise LegiplanError(f"row {i}: correct flag contradicts "
                                    "prediction")
            buckets.setdefault(row["policy_type"], []).append(
                {"stop": stop, "correct": correct == "true",
                 "confidence": confidence})
    out = {}
    for policy_type, rows in sorted(buckets.items()):
        out[policy_type] = ResponseSummary(
            policy_type=policy_type,
            responses=len(rows),
            correct=sum(r["correct"] for r in rows),
            mean_stop_time=float(np.mean([r["stop"] for r in rows])),
            mean_confidence=float(np.mean([r["confidence"] for r in rows])))
    return out


def rows_equal_ignoring_seconds(path_a: Path, path_b: Path,
                                framework: str | None = None) -> bool:
    """Row-for-row equality of two result CSVs, masking the ``seconds``
    column (wall-clock jitter is not reproducible)."""
    cols = CSV_HEADER.split(",")
    sec = cols.index("seconds")

    def load(path):
        rows = _read_rows(Path(path))
        out = []
        for row in rows:
            if framework and row["framework"] != framework:
                continue
            vals = [row[c] for c in cols]
            vals[sec] = "<seconds>"
            out.append(vals)
        return out

    return load(path_a) == load(path_b)
