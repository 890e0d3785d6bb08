"""Acceptance gate: every headline claim, one test each, at stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS line per
criterion with the measured values.
"""

import time

import numpy as np
import pytest

from parkplan import (
    MatrixDistanceSource,
    ScenarioConfig,
    SpacePool,
    adversarial_matrix,
    brute_force_assign,
    construct_subset,
    generate,
    greedy_baseline,
    plan_reduced,
    run_stream,
    solve_rectangular,
    solve_square,
)
from parkplan.bench import run_subset_suite, run_waste_suite, timed_stream
from parkplan.cli import main
from parkplan.fileio import RESULT_COLUMNS

from click.testing import CliRunner


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def _report(name: str, detail: str) -> None:
    print(f"\nPASS {name}: {detail}")


def test_adversarial_stream_costs_are_integer_exact():
    start = time.perf_counter()
    expected = {1: 50069.0, 2: 23549.0, 3: 8525.0, 6: 209.0}
    matrix = adversarial_matrix(6)
    got = {}
    for m_param, cost in expected.items():
        outcome = run_stream(range(6), SpacePool(6), MatrixDistanceSource(matrix), m_param)
        got[m_param] = outcome.cumulative_cost
        assert outcome.cumulative_cost == cost
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report("adversarial exactness",
            f"costs {sorted(got.items())} in {elapsed:.3f}s (< 1s)")


def test_solvers_match_brute_force_oracle():
    start = time.perf_counter()
    rng = _rng(20_000)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        m = rng.integers(0, 1001, (n, n)).astype(float)
        assert solve_square(m).total_cost == brute_force_assign(m).total_cost
    for _ in range(100):
        rows = int(rng.integers(1, 9))
        cols = int(rng.integers(rows, 9))
        m = rng.integers(0, 1001, (rows, cols)).astype(float)
        assert solve_rectangular(m).total_cost == brute_force_assign(m).total_cost
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    _report("oracle equivalence",
            f"200 square + 100 rectangular instances exact in {elapsed:.2f}s (< 10s)")


def test_reduction_cost_sandwiches_the_exact_optimum():
    rng = _rng(30_000)
    equal_cases = strict_cases = 0
    for trial in range(120):
        n_vehicles = int(rng.integers(1, 11))
        if trial % 3 == 0:
            n_spaces = n_vehicles + int(rng.integers(0, 4))
        else:
            n_spaces = int(rng.integers(n_vehicles, 501))
        m = rng.uniform(0.0, 1000.0, (n_vehicles, n_spaces))
        dist = MatrixDistanceSource(m)
        exact = solve_rectangular(m)
        depth = int(rng.integers(1, n_vehicles + 1))
        subset = construct_subset(range(n_vehicles), dist, depth=depth)
        while len(subset) < n_vehicles:
            depth += 1
            subset = construct_subset(range(n_vehicles), dist, depth=depth)
        reduced = plan_reduced(range(n_vehicles), None, dist, m_param=depth)
        assert reduced.total_cost >= exact.total_cost
        if all(space in subset for space in exact.pairs.values()):
            assert reduced.total_cost == exact.total_cost
            equal_cases += 1
        elif reduced.total_cost > exact.total_cost:
            strict_cases += 1
    assert equal_cases > 0

    # A contended instance where depth 2 < batch size 3 leaves the best
    # column for the middle vehicle (index 3) outside the candidate union.
    contended = np.array([
        [0.0, 1.0, 100.0, 100.0],
        [0.1, 100.0, 0.2, 0.25],
        [100.0, 0.6, 0.5, 100.0],
    ])
    dist = MatrixDistanceSource(contended)
    subset = construct_subset(range(3), dist, depth=2)
    exact = brute_force_assign(contended)
    assert not all(space in subset for space in exact.pairs.values())
    reduced = plan_reduced(range(3), None, dist, m_param=2)
    assert reduced.total_cost > exact.total_cost
    strict_cases += 1

    _report("reduction sandwich",
            f"{120 + 1} instances, 0 violations; equality held in all "
            f"{equal_cases} covered cases, {strict_cases} strictly-above cases")


_CLUSTERED = ScenarioConfig(kind="clustered", n_vehicles=100, n_spaces=10_000,
                            lot_size=300, seed=0)


def test_clustered_waste_stays_below_claim_and_trends_down():
    records = run_waste_suite(_CLUSTERED, [1, 2, 5, 10, 20], n_seeds=30)
    wastes = [r.waste for r in records]
    assert all(w is not None for w in wastes)
    assert wastes[-1] < 0.11
    assert all(b <= a for a, b in zip(wastes, wastes[1:]))
    _report("waste claim",
            "mean waste over m=[1,2,5,10,20]: "
            + ", ".join(f"{w:.5f}" for w in wastes)
            + f"; final {wastes[-1]:.5f} < 0.11, non-increasing")


def test_clustered_candidate_sets_stay_near_batch_size():
    records = run_subset_suite(_CLUSTERED, [20], n_seeds=30)
    ratio = records[0].mean_subset_ratio
    assert ratio is not None and ratio <= 3.0
    _report("subset clustering claim",
            f"mean |S'|/m = {ratio:.3f} at m=20 (<= 3; m^2 bound would be 20)")


def test_hold_one_stream_equals_greedy_baseline():
    for seed in range(50):
        config = ScenarioConfig(kind="clustered", n_vehicles=30, n_spaces=600,
                                lot_size=150, seed=seed)
        scenario = generate(config)
        batched = run_stream(scenario.arrivals(), scenario.space_pool(),
                             scenario.distance_source(), 1)
        greedy = greedy_baseline(scenario.arrivals(), scenario.space_pool(),
                                 scenario.distance_source())
        assert batched == greedy
    _report("greedy equivalence", "50 seeds, run_stream(m=1) == greedy_baseline")


def test_scale_run_plans_a_huge_pool_within_budget():
    times = {}
    for m in (100, 200):
        config = ScenarioConfig(kind="clustered", n_vehicles=m, n_spaces=1_600_000,
                                lot_size=300, seed=0)
        outcome, elapsed = timed_stream(generate(config), m)
        assert len(outcome.assignments) == 1
        assert len(outcome.pairs()) == m
        times[m] = elapsed
    assert times[100] < 10.0
    assert times[200] <= 4.0 * times[100]
    _report("scale run",
            f"N=1,600,000: m=100 in {times[100]:.2f}s (< 10s), "
            f"m=200/m=100 ratio {times[200] / times[100]:.2f} (<= 4)")


def test_overflow_batch_serves_earliest_arrivals_optimally():
    entries = np.array([
        [4.0, 1.0, 3.0],
        [2.0, 0.0, 5.0],
        [3.0, 2.0, 2.0],
        [9.0, 9.0, 9.0],
        [8.0, 8.0, 8.0],
    ])
    outcome = run_stream(range(5), SpacePool(3), MatrixDistanceSource(entries), m_param=5)
    assert sorted(outcome.pairs()) == [0, 1, 2]
    assert outcome.rejections == [3, 4]
    oracle = brute_force_assign(entries[:3])
    assert outcome.cumulative_cost == oracle.total_cost
    _report("FCFS overflow",
            f"5 arrivals, 3 spaces: earliest 3 served at oracle cost "
            f"{oracle.total_cost}, arrivals 3 and 4 rejected")


def test_repeat_runs_are_byte_identical_modulo_wall_time():
    config = ScenarioConfig(kind="clustered", n_vehicles=60, n_spaces=3000,
                            lot_size=300, seed=17)
    outcomes = []
    for _ in range(2):
        scenario = generate(config)
        outcomes.append(run_stream(scenario.arrivals(), scenario.space_pool(),
                                   scenario.distance_source(), 20))
    assert outcomes[0] == outcomes[1]

    runner = CliRunner()
    args = ["plan", "--kind", "clustered", "--n-vehicles", "60", "--n-spaces", "3000",
            "--lot-size", "300", "--seed", "17", "--m", "20", "--exact"]
    first = runner.invoke(main, args, catch_exceptions=False)
    second = runner.invoke(main, args, catch_exceptions=False)
    assert first.exit_code == 0 and second.exit_code == 0

    def strip_wall(text: str) -> str:
        header = ",".join(RESULT_COLUMNS)
        lines = []
        in_csv = False
        for line in text.splitlines():
            if line == header:
                in_csv = True
            elif in_csv and line.count(",") == len(RESULT_COLUMNS) - 1:
                line = line.rsplit(",", 1)[0] + ","
            lines.append(line)
        return "\n".join(lines)

    assert strip_wall(first.output) == strip_wall(second.output)
    _report("determinism",
            "library outcomes bit-identical; CLI dumps byte-identical minus wall_time")
