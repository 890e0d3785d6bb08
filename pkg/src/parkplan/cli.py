"""Command-line frontend: solve, plan, gen, bench."""

from __future__ import annotations

import time
from dataclasses import replace
from pathlib import Path

import click

from . import bench as bench_mod
from .assignment import Assignment, solve_rectangular, solve_square
from .errors import ParkplanError
from .fileio import (
    format_number,
    format_records,
    read_matrix,
    read_scenario,
    write_results,
    write_scenario,
)
from .model import MatrixDistanceSource
from .planner import PlanOutcome, greedy_baseline, run_stream
from .scenarios import SCENARIO_KINDS, Scenario, ScenarioConfig, generate, waste


def _die(exc: Exception) -> click.ClickException:
    return click.ClickException(str(exc))


def _generation_options(fn):
    """The shared scenario-generation flags, applied bottom-up."""
    options = [
        click.option("--kind", type=click.Choice(SCENARIO_KINDS), default="clustered",
                     show_default=True, help="Scenario family."),
        click.option("--n-vehicles", type=int, default=100, show_default=True,
                     help="Number of arriving vehicles."),
        click.option("--n-spaces", type=int, default=10_000, show_default=True,
                     help="Number of parking spaces."),
        click.option("--lot-size", type=int, default=300, show_default=True,
                     help="Spaces per lot (clustered family)."),
        click.option("--world-extent", type=float, default=10_000.0, show_default=True,
                     help="Side length of the square world."),
        click.option("--seed", type=int, default=0, show_default=True,
                     help="Scenario seed."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _config_from_flags(kind, n_vehicles, n_spaces, lot_size, world_extent, seed) -> ScenarioConfig:
    try:
        return ScenarioConfig(
            kind=kind, n_vehicles=n_vehicles, n_spaces=n_spaces,
            lot_size=lot_size, world_extent=world_extent, seed=seed,
        )
    except ParkplanError as exc:
        raise _die(exc) from exc


def _parse_m_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise click.ClickException(f"--m must be comma-separated integers, got {text!r}")
    if not values or any(m < 1 for m in values):
        raise click.ClickException(f"--m values must be positive, got {text!r}")
    return values


def _echo_assignment_lines(assignments, dist) -> None:
    for assignment in assignments:
        for vehicle, space in assignment.pairs.items():
            d = format_number(dist.distance(vehicle, space))
            click.echo(f"vehicle {vehicle} -> space {space}  distance {d}")


def _echo_rejections(rejections) -> None:
    for vehicle in rejections:
        click.echo(f"vehicle {vehicle}: no more available parking spaces")


@click.group()
def main() -> None:
    """Batch parking assignment: exact solves, stream planning, benchmarks."""


@main.command()
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
def solve(matrix_file: str) -> None:
    """Exactly assign the rows of an explicit matrix file to its columns.

    With more rows (vehicles) than columns (spaces) the earliest rows are
    served and the rest get a capacity message, first come first served.
    """
    try:
        matrix = read_matrix(matrix_file)
        if matrix.rows <= matrix.cols:
            result = solve_rectangular(matrix)
            rejected: list[int] = []
        else:
            served = matrix.entries[: matrix.cols, :]
            solution = solve_square(served)
            result = Assignment(
                pairs={i: solution.perm[i] for i in range(matrix.cols)},
                total_cost=solution.total_cost,
            )
            rejected = list(range(matrix.cols, matrix.rows))
        dist = MatrixDistanceSource(matrix)
    except ParkplanError as exc:
        raise _die(exc) from exc
    _echo_assignment_lines([result], dist)
    _echo_rejections(rejected)
    click.echo(f"total_cost {format_number(result.total_cost)}")


@main.command()
@click.option("--scenario", "scenario_file", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Load a scenario file instead of generating one.")
@_generation_options
@click.option("--m", "m_param", type=int, default=None,
              help="Hold size: queries per batch.  [default: 1]")
@click.option("--exact", is_flag=True,
              help="Also solve the full problem exactly and report waste.")
@click.option("--greedy", is_flag=True,
              help="Use the per-query nearest-space baseline instead of batching.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the run record CSV here instead of stdout.")
def plan(scenario_file, kind, n_vehicles, n_spaces, lot_size, world_extent, seed,
         m_param, exact, greedy, out) -> None:
    """Plan an arrival stream and print per-vehicle guidance plus a run record."""
    if greedy and m_param is not None:
        raise click.ClickException("--greedy and --m are mutually exclusive")
    m = 1 if m_param is None else m_param
    if m < 1:
        raise click.ClickException(f"--m must be >= 1, got {m}")

    try:
        if scenario_file is not None:
            scenario = read_scenario(scenario_file)
        else:
            scenario = generate(_config_from_flags(
                kind, n_vehicles, n_spaces, lot_size, world_extent, seed))

        exact_cost = None
        if exact:
            exact_cost = bench_mod.exact_stream_cost(scenario)
            if exact_cost is None:
                if scenario.n_vehicles > scenario.n_spaces:
                    raise click.ClickException(
                        "--exact refused: more vehicles than spaces, "
                        "the full problem has no feasible assignment"
                    )
                raise click.ClickException(
                    "--exact refused: full matrix would hold "
                    f"{scenario.n_vehicles * scenario.n_spaces} entries, "
                    f"size guard is {bench_mod.MAX_EXACT_ENTRIES}"
                )

        dist = scenario.distance_source()
        pool = scenario.space_pool()
        start = time.perf_counter()
        if greedy:
            outcome = greedy_baseline(scenario.arrivals(), pool, dist)
        else:
            outcome = run_stream(scenario.arrivals(), pool, dist, m)
        elapsed = time.perf_counter() - start

        run_waste = None
        if exact_cost is not None and exact_cost > 0.0:
            run_waste = waste(outcome.cumulative_cost, exact_cost)
        size = bench_mod.mean_subset_size(outcome)
        cfg = scenario.config
        record = bench_mod.RunRecord(
            suite="plan", kind=cfg.kind, n_vehicles=cfg.n_vehicles,
            n_spaces=cfg.n_spaces, lot_size=cfg.lot_size,
            world_extent=cfg.world_extent, seed=cfg.seed, seeds=1, m=m,
            batch_count=len(outcome.assignments),
            cumulative_cost=outcome.cumulative_cost,
            exact_cost=exact_cost, waste=run_waste,
            mean_subset_size=size,
            mean_subset_ratio=None if size is None else size / m,
            wall_time_s=elapsed,
        )
        _echo_assignment_lines(outcome.assignments, dist)
        _echo_rejections(outcome.rejections)
        if out is None:
            click.echo(format_records([record]), nl=False)
        else:
            write_results([record], out)
            click.echo(f"wrote {out}")
    except ParkplanError as exc:
        raise _die(exc) from exc


@main.command()
@_generation_options
@click.option("--out", type=click.Path(dir_okay=False), required=True,
              help="Scenario file to write.")
def gen(kind, n_vehicles, n_spaces, lot_size, world_extent, seed, out) -> None:
    """Generate a seeded scenario and write it to a file."""
    config = _config_from_flags(kind, n_vehicles, n_spaces, lot_size, world_extent, seed)
    try:
        write_scenario(generate(config), out)
    except ParkplanError as exc:
        raise _die(exc) from exc
    click.echo(f"wrote {out}")


_SUITE_DEFAULT_M = {
    "waste": "1,2,5,10,20",
    "subset": "20",
    "runtime": "25,50,100,200",
}


@main.command()
@click.option("--suite", type=click.Choice(("waste", "runtime", "subset")), required=True,
              help="Which experiment to run.")
@_generation_options
@click.option("--m", "m_list", type=str, default=None,
              help="Comma-separated hold sizes to sweep.  [default: per suite]")
@click.option("--seeds", type=int, default=30, show_default=True,
              help="Seeds per aggregate row.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="CSV file to write; stdout when omitted.")
@click.option("--plot", is_flag=True,
              help="Also render the CSV to a PNG next to it (needs --out).")
def bench(suite, kind, n_vehicles, n_spaces, lot_size, world_extent, seed,
          m_list, seeds, out, plot) -> None:
    """Run a benchmark suite and emit one aggregate CSV row per hold size."""
    if plot and out is None:
        raise click.ClickException("--plot needs --out so the figure has a sibling path")
    m_values = _parse_m_list(m_list if m_list is not None else _SUITE_DEFAULT_M[suite])
    config = _config_from_flags(kind, n_vehicles, n_spaces, lot_size, world_extent, seed)
    try:
        if suite == "waste":
            records = bench_mod.run_waste_suite(config, m_values, n_seeds=seeds)
        elif suite == "subset":
            records = bench_mod.run_subset_suite(config, m_values, n_seeds=seeds)
        else:
            records = bench_mod.run_runtime_suite(config, m_values, n_seeds=seeds)
        if out is None:
            click.echo(format_records(records), nl=False)
        else:
            write_results(records, out)
            click.echo(f"wrote {out}")
            if plot:
                from .plots import plot_results

                image = plot_results(out)
                click.echo(f"wrote {image}")
    except ParkplanError as exc:
        raise _die(exc) from exc


if __name__ == "__main__":
    main()
