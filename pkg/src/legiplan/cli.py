"""Command-line entry points for the benchmark harness."""

from __future__ import annotations

import json
from pathlib import Path

import click
import numpy as np

from . import __version__
from .bench import (BenchRun, aggregate_responses, balance_results,
                    export_episodes, planner_discount, planner_tolerance,
                    run_goal_scaling, run_irl_experiments, run_state_scaling)
from .errors import LegiplanError
from .fixtures import fixture, fixture_names
from .legibility import LegibleProblem, solve_legible
from .maze import ACTION_NAMES, build_family, parse_maze
from .mdp import greedy_policy, rollout


def _load_spec(maze: str):
    if maze in fixture_names():
        return fixture(maze)
    path = Path(maze)
    if not path.exists():
        raise click.ClickException(
            f"{maze!r} is neither a fixture name nor a maze file; "
            f"fixtures: {', '.join(fixture_names())}")
    return parse_maze(path.read_text())


@click.group()
@click.version_option(__version__)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--beta", type=float, default=1.0, show_default=True)
@click.option("--gamma", type=float, default=0.9, show_default=True)
@click.option("--eta", type=float, default=1.0, show_default=True)
@click.option("--timeout-secs", type=float, default=300.0, show_default=True)
@click.option("--out-dir", type=click.Path(path_type=Path),
              default=Path("bench-out"), show_default=True)
@click.option("--paper-scale", is_flag=True,
              help="Run the full-scale study protocol "
                   "(250 samples, 2 h timeouts, full search budgets).")
@click.pass_context
def main(ctx, seed, beta, gamma, eta, timeout_secs, out_dir, paper_scale):
    """Legible planning toolkit: solvers, baselines and benchmarks."""
    ctx.obj = dict(seed=seed, beta=beta, gamma=gamma, eta=eta,
                   timeout_secs=timeout_secs, out_dir=out_dir,
                   paper_scale=paper_scale)


def _config(ctx, experiment, **extra) -> BenchRun:
    return BenchRun(experiment=experiment, **ctx.obj, **extra)


@main.command()
@click.option("--maze", required=True,
              help="Fixture name or path to a maze text file.")
@click.option("--goal", required=True, help="Goal label, e.g. A.")
@click.option("--policy", type=click.Choice(["legible", "optimal"]),
              default="legible", show_default=True)
@click.option("--start", default=None,
              help="Start cell as row,col (defaults to the maze's S).")
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Write values, policy and trajectory as JSON.")
@click.pass_context
def solve(ctx, maze, goal, policy, start, out):
    """Solve one maze for one goal and print a sample trajectory."""
    spec = _load_spec(maze)
    gamma = planner_discount(spec.num_states, ctx.obj["gamma"])
    tolerance = planner_tolerance(gamma)
    family = build_family(spec, discount=gamma)
    try:
        target = family.goal_index(goal)
    except ValueError:
        raise click.ClickException(
            f"goal {goal!r} not in maze (has {', '.join(family.labels)})")
    if policy == "legible":
        problem = LegibleProblem.from_family(family, target,
                                             beta=ctx.obj["beta"],
                                             tolerance=tolerance)
        result, pol = solve_legible(problem, tolerance=tolerance)
    else:
        result = family.solve(tolerance)[target]
        pol = greedy_policy(result)
    if start is not None:
        r, c = (int(x) for x in start.split(","))
        start_state = spec.state_index((r, c))
    elif spec.default_start is not None:
        start_state = spec.state_index(spec.default_start)
    else:
        start_state = next(spec.state_index(cell) for cell in spec.free_cells()
                           if cell != spec.goal_cell(goal))
    trajectory = rollout(family.mdps[target], pol, start_state,
                         horizon=4 * (spec.rows + spec.cols),
                         rng_seed=ctx.obj["seed"])
    reached = trajectory.final_state == family.goal_states[target]
    click.echo(f"{policy} policy for goal {goal} on {maze} "
               f"(gamma={gamma}, iterations={result.iterations})")
    click.echo(f"trajectory: {len(trajectory)} steps, "
               f"goal reached: {reached}")
    click.echo(" -> ".join(
        f"({spec.cell(s)[0]},{spec.cell(s)[1]}):{ACTION_NAMES[a]}"
        for s, a in trajectory.pairs()[:12])
        + (" ..." if len(trajectory) > 12 else ""))
    if out is not None:
        doc = {
            "maze": maze, "goal": goal, "policy_type": policy,
            "gamma": gamma, "values": result.values.tolist(),
            "actions": np.asarray(pol.actions).tolist(),
            "trajectory": {
                "states": list(trajectory.states),
                "actions": [ACTION_NAMES[a] for a in trajectory.actions],
                "reached": bool(reached),
            },
        }
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(doc, indent=1))
        click.echo(f"wrote {out}")


@main.group()
def bench():
    """Framework-comparison benchmarks (scalability sweeps)."""


@bench.command("goals")
@click.option("--samples", type=int, default=10, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True,
              help="Sample worker pool size; >1 trades timing fidelity "
                   "for throughput.")
@click.pass_context
def bench_goals(ctx, samples, workers):
    """Goal-count scaling on the 25x25 maze (3..10 goals)."""
    config = _config(ctx.parent, "goal-scaling", samples=samples,
                     workers=workers)
    path = run_goal_scaling(config)
    click.echo(f"wrote {path}")


@bench.command("states")
@click.option("--samples", type=int, default=10, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True,
              help="Sample worker pool size; >1 trades timing fidelity "
                   "for throughput.")
@click.pass_context
def bench_states(ctx, samples, workers):
    """State-count scaling over the seven size fixtures."""
    config = _config(ctx.parent, "state-scaling", samples=samples,
                     workers=workers)
    path = run_state_scaling(config)
    click.echo(f"wrote {path}")


@bench.command("balance")
@click.argument("raw_csv", type=click.Path(exists=True, path_type=Path))
@click.option("--quota", type=int, required=True,
              help="Paired samples to keep per configuration.")
@click.option("--out", type=click.Path(path_type=Path), default=None)
def bench_balance(raw_csv, quota, out):
    """Keep the fastest jointly-successful samples per configuration."""
    try:
        path = balance_results(raw_csv, quota, out)
    except LegiplanError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"wrote {path}")


@main.group()
def irl():
    """Goal-inference teaching experiments."""


@irl.command("trajectory")
@click.option("--scenarios", type=int, default=50, show_default=True,
              help="Scenarios per maze fixture.")
@click.pass_context
def irl_trajectory(ctx, scenarios):
    """Sequential-demonstration condition."""
    config = _config(ctx.parent, "irl-trajectory", scenarios=scenarios)
    path = run_irl_experiments(config)
    click.echo(f"wrote {path}")


@irl.command("samples")
@click.option("--scenarios", type=int, default=50, show_default=True)
@click.pass_context
def irl_samples(ctx, scenarios):
    """Unlinked-samples condition."""
    config = _config(ctx.parent, "irl-samples", scenarios=scenarios)
    path = run_irl_experiments(config)
    click.echo(f"wrote {path}")


@main.command("export-episodes")
@click.option("--pool", type=int, default=37, show_default=True,
              help="Episodes per condition.")
@click.option("--maze", default="10x10", show_default=True,
              help="Fixture the episodes play on.")
@click.pass_context
def export_episodes_cmd(ctx, pool, maze):
    """Write guessing-game episode pools (JSON) for both conditions."""
    config = _config(ctx, "export-episodes", episode_pool=pool,
                     export_maze=maze)
    path = export_episodes(config)
    click.echo(f"wrote {path}")


@main.command("aggregate-responses")
@click.argument("csv_path", type=click.Path(exists=True, path_type=Path))
def aggregate_responses_cmd(csv_path):
    """Summarize a guessing-game response log per policy condition."""
    try:
        summaries = aggregate_responses(csv_path)
    except LegiplanError as exc:
        raise click.ClickException(str(exc))
    for policy_type, s in summaries.items():
        click.echo(f"{policy_type}: n={s.responses} correct={s.correct} "
                   f"accuracy={s.accuracy:.3f} "
                   f"mean_stop={s.mean_stop_time:.2f}s "
                   f"mean_confidence={s.mean_confidence:.2f}")


@main.command("mazes")
def mazes_cmd():
    """List shipped maze fixtures."""
    for name in fixture_names():
        spec = fixture(name)
        click.echo(f"{name}: {spec.rows}x{spec.cols}, "
                   f"{len(spec.goals)} goals, {len(spec.walls)} walls")


if __name__ == "__main__":
    main()
