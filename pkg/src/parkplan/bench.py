"""Benchmark suites: solution waste, candidate-set growth, runtime scaling.

Each suite sweeps the hold size m over a list, runs every (seed, m) cell,
and aggregates per m into one RunRecord carrying the full scenario config,
so any CSV row can be regenerated exactly.  Cells are independent, so the
waste and subset suites fan out across seeds on a thread pool (numpy
releases the GIL in the heavy parts); PARKPLAN_THREADS caps the fan-out.
The runtime suite always runs serially, anything else would poison its
measurements.
"""

from __future__ import annotations

import dataclasses
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .assignment import solve_rectangular
from .errors import ConfigError
from .planner import PlanOutcome, run_stream
from .scenarios import Scenario, ScenarioConfig, generate, waste

# Full exact solves materialise the M x N matrix; refuse past this many
# entries (the N=10,000 waste runs fit, the 1.6-million-space runs do not).
MAX_EXACT_ENTRIES = 20_000_000

DEFAULT_SEEDS = 30


@dataclass
class RunRecord:
    """One results row; field names match the CSV columns."""

    suite: str
    kind: str
    n_vehicles: int
    n_spaces: int
    lot_size: int
    world_extent: float
    seed: int
    seeds: int
    m: int
    batch_count: int | None
    cumulative_cost: float | None
    exact_cost: float | None
    waste: float | None
    mean_subset_size: float | None
    mean_subset_ratio: float | None
    wall_time_s: float | None


def thread_count() -> int:
    """Worker cap for parallel suites; PARKPLAN_THREADS overrides."""
    env = os.environ.get("PARKPLAN_THREADS")
    if env is None:
        return min(32, os.cpu_count() or 1)
    try:
        n = int(env)
    except ValueError:
        raise ConfigError(f"PARKPLAN_THREADS must be an integer, got {env!r}") from None
    if n < 1:
        raise ConfigError(f"PARKPLAN_THREADS must be >= 1, got {n}")
    return n


def exact_stream_cost(scenario: Scenario) -> float | None:
    """Exact offline optimum over the whole stream, or None when infeasible.

    None means "not computed": more vehicles than spaces has no full
    assignment, and matrices past MAX_EXACT_ENTRIES are refused.
    """
    n_vehicles, n_spaces = scenario.n_vehicles, scenario.n_spaces
    if n_vehicles == 0:
        return 0.0
    if n_vehicles > n_spaces:
        return None
    if n_vehicles * n_spaces > MAX_EXACT_ENTRIES:
        return None
    matrix = scenario.distance_source().full_matrix()
    return solve_rectangular(matrix).total_cost


def timed_stream(scenario: Scenario, m_param: int) -> tuple[PlanOutcome, float]:
    """Run the planner on a fresh pool; wall time covers planning only."""
    dist = scenario.distance_source()
    pool = scenario.space_pool()
    arrivals = scenario.arrivals()
    start = time.perf_counter()
    outcome = run_stream(arrivals, pool, dist, m_param)
    elapsed = time.perf_counter() - start
    return outcome, elapsed


def mean_subset_size(outcome: PlanOutcome) -> float | None:
    """Mean |S'| over the batches that went through the reduction."""
    sizes = [s for s in outcome.subset_sizes if s is not None]
    if not sizes:
        return None
    return math.fsum(sizes) / len(sizes)


@dataclass
class _Cell:
    """Measurements from one (seed, m) run."""

    cumulative_cost: float
    exact_cost: float | None
    waste: float | None
    mean_subset_size: float | None
    batch_count: int
    wall_time_s: float


def _run_seed(
    config: ScenarioConfig, seed: int, m_values: list[int], with_exact: bool
) -> dict[int, _Cell]:
    scenario = generate(config.with_seed(seed))
    exact = exact_stream_cost(scenario) if with_exact else None
    cells: dict[int, _Cell] = {}
    for m in m_values:
        outcome, elapsed = timed_stream(scenario, m)
        w = None
        if exact is not None and exact > 0.0:
            w = waste(outcome.cumulative_cost, exact)
        cells[m] = _Cell(
            cumulative_cost=outcome.cumulative_cost,
            exact_cost=exact,
            waste=w,
            mean_subset_size=mean_subset_size(outcome),
            batch_count=len(outcome.assignments),
            wall_time_s=elapsed,
        )
    return cells


def _mean(values) -> float | None:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return math.fsum(present) / len(present)


def _aggregate(
    suite: str, config: ScenarioConfig, m: int, per_seed: list[dict[int, _Cell]],
    base_seed: int, n_seeds: int,
) -> RunRecord:
    cells = [cells_for_seed[m] for cells_for_seed in per_seed]
    size = _mean(c.mean_subset_size for c in cells)
    return RunRecord(
        suite=suite,
        kind=config.kind,
        n_vehicles=config.n_vehicles,
        n_spaces=config.n_spaces,
        lot_size=config.lot_size,
        world_extent=config.world_extent,
        seed=base_seed,
        seeds=n_seeds,
        m=m,
        batch_count=cells[0].batch_count,
        cumulative_cost=_mean(c.cumulative_cost for c in cells),
        exact_cost=_mean(c.exact_cost for c in cells),
        waste=_mean(c.waste for c in cells),
        mean_subset_size=size,
        mean_subset_ratio=None if size is None else size / m,
        wall_time_s=_mean(c.wall_time_s for c in cells),
    )


def _sweep(
    suite: str, config: ScenarioConfig, m_values, n_seeds: int, base_seed: int,
    with_exact: bool, max_workers: int | None,
) -> list[RunRecord]:
    m_values = [int(m) for m in m_values]
    if not m_values or any(m < 1 for m in m_values):
        raise ConfigError(f"m values must be positive integers, got {m_values}")
    if n_seeds < 1:
        raise ConfigError(f"need at least one seed, got {n_seeds}")
    seeds = [base_seed + k for k in range(n_seeds)]
    workers = min(max_workers or thread_count(), n_seeds)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_seed = list(
                pool.map(lambda s: _run_seed(config, s, m_values, with_exact), seeds)
            )
    else:
        per_seed = [_run_seed(config, s, m_values, with_exact) for s in seeds]
    return [_aggregate(suite, config, m, per_seed, base_seed, n_seeds) for m in m_values]


def run_waste_suite(
    config: ScenarioConfig, m_values, n_seeds: int = DEFAULT_SEEDS,
    max_workers: int | None = None,
) -> list[RunRecord]:
    """Mean waste per m against the exact offline optimum (when computable)."""
    return _sweep(
        "waste", config, m_values, n_seeds, config.seed,
        with_exact=True, max_workers=max_workers,
    )


def run_subset_suite(
    config: ScenarioConfig, m_values, n_seeds: int = DEFAULT_SEEDS,
    max_workers: int | None = None,
) -> list[RunRecord]:
    """Mean candidate-set size (and its ratio to m) per m; no exact solves."""
    return _sweep(
        "subset", config, m_values, n_seeds, config.seed,
        with_exact=False, max_workers=max_workers,
    )


def run_runtime_suite(
    config: ScenarioConfig, m_values, n_seeds: int = 3,
) -> list[RunRecord]:
    """Planning wall time as the batch size grows, one single-batch run per cell.

    For each m the scenario is regenerated with n_vehicles = m and planned
    as one batch, so the measurement isolates batch cost from stream length.
    Always serial.
    """
    records: list[RunRecord] = []
    for m in m_values:
        config_m = dataclasses.replace(config, n_vehicles=int(m))
        records.extend(
            _sweep(
                "runtime", config_m, [int(m)], n_seeds, config.seed,
                with_exact=False, max_workers=1,
            )
        )
    return records
