"""Exact solver tests: worked examples, oracle equivalence, invariants."""

import math

import numpy as np
import pytest

from parkplan import (
    Assignment,
    CostMatrix,
    DimensionError,
    DomainError,
    SizeGuardError,
    brute_force_assign,
    pad_to_square,
    solve_rectangular,
    solve_square,
)
from parkplan.scenarios import adversarial_matrix


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


# --- CostMatrix validation ---------------------------------------------------

def test_cost_matrix_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        CostMatrix(np.zeros(3))
    with pytest.raises(DimensionError):
        CostMatrix(np.zeros((0, 4)))
    with pytest.raises(DimensionError):
        CostMatrix(np.zeros((2, 0)))


def test_cost_matrix_rejects_bad_values():
    with pytest.raises(DomainError):
        CostMatrix([[1.0, -0.5], [0.0, 2.0]])
    with pytest.raises(DomainError):
        CostMatrix([[1.0, np.inf], [0.0, 2.0]])
    with pytest.raises(DomainError):
        CostMatrix([[1.0, np.nan], [0.0, 2.0]])


def test_cost_matrix_is_immutable_and_copied():
    source = np.array([[1.0, 2.0], [3.0, 4.0]])
    cm = CostMatrix(source)
    source[0, 0] = 99.0
    assert cm.entries[0, 0] == 1.0
    with pytest.raises(ValueError):
        cm.entries[0, 0] = 5.0


# --- solve_square ------------------------------------------------------------

def test_solve_square_single_entry():
    sol = solve_square([[7.5]])
    assert sol.perm == (0,)
    assert sol.total_cost == 7.5


def test_solve_square_power_matrix_takes_antidiagonal():
    sol = solve_square(adversarial_matrix(6))
    assert sol.total_cost == 209.0
    # 6 + 25 + 64 + 81 + 32 + 1
    assert sol.perm == (5, 4, 3, 2, 1, 0)


def test_solve_square_three_by_three():
    sol = solve_square([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    assert sol.total_cost == 5.0
    assert sol.perm == (1, 0, 2)


def test_solve_square_rejects_rectangles():
    with pytest.raises(DimensionError):
        solve_square([[1.0, 2.0]])


# --- pad_to_square -----------------------------------------------------------

def test_pad_appends_zero_rows():
    padded = pad_to_square([[3.0, 1.0]])
    assert padded.entries.tolist() == [[3.0, 1.0], [0.0, 0.0]]
    padded = pad_to_square([[1, 2, 3], [4, 5, 6]])
    assert padded.entries.tolist()[2] == [0.0, 0.0, 0.0]
    assert padded.entries.tolist()[:2] == [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]


def test_pad_leaves_square_unchanged():
    cm = CostMatrix([[1.0, 2.0], [3.0, 4.0]])
    assert pad_to_square(cm) is cm


def test_pad_rejects_wide_rows():
    with pytest.raises(DimensionError):
        pad_to_square([[1.0], [2.0]])


# --- solve_rectangular -------------------------------------------------------

def test_solve_rectangular_single_row_picks_argmin():
    result = solve_rectangular([[9, 2, 5]])
    assert result.pairs == {0: 1}
    assert result.total_cost == 2.0


def test_solve_rectangular_contended_cheap_column():
    # Only one row can sit on the cheap column 0; the other pays 100.
    result = solve_rectangular([[1, 100, 100], [2, 100, 100]])
    assert result.total_cost == 101.0
    assert result.pairs == brute_force_assign([[1, 100, 100], [2, 100, 100]]).pairs


def test_solve_rectangular_zero_diagonal():
    assert solve_rectangular([[0, 1], [1, 0]]).total_cost == 0.0


def test_solve_rectangular_rejects_more_rows_than_cols():
    with pytest.raises(DimensionError):
        solve_rectangular([[1.0], [2.0]])


def test_rectangular_matches_explicit_padding_cost():
    rng = _rng(5)
    for _ in range(60):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(rows, 9))
        m = rng.integers(0, 50, (rows, cols)).astype(float)
        direct = solve_rectangular(m)
        padded = solve_square(pad_to_square(m))
        real_cost = math.fsum(m[i, padded.perm[i]] for i in range(rows))
        assert direct.total_cost == real_cost == padded.total_cost


# --- brute_force_assign ------------------------------------------------------

def test_brute_force_power_matrix():
    assert brute_force_assign(adversarial_matrix(6)).total_cost == 209.0


def test_brute_force_trivial_and_ties():
    assert brute_force_assign([[0.0]]).total_cost == 0.0
    # Equal-cost optima resolve to the lexicographically smallest columns.
    tied = brute_force_assign([[1, 1, 5], [1, 1, 5]])
    assert tied.pairs == {0: 0, 1: 1}


def test_brute_force_row_guard():
    with pytest.raises(SizeGuardError):
        brute_force_assign(np.ones((9, 9)))


# --- oracle equivalence ------------------------------------------------------

def test_square_solver_matches_oracle():
    rng = _rng(101)
    for _ in range(210):
        n = int(rng.integers(1, 8))
        m = rng.integers(0, 1001, (n, n)).astype(float)
        assert solve_square(m).total_cost == brute_force_assign(m).total_cost


def test_rectangular_solver_matches_oracle():
    rng = _rng(202)
    for _ in range(110):
        rows = int(rng.integers(1, 9))
        cols = int(rng.integers(rows, 9))
        m = rng.integers(0, 1001, (rows, cols)).astype(float)
        assert solve_rectangular(m).total_cost == brute_force_assign(m).total_cost


# --- invariants --------------------------------------------------------------

def _assert_valid_matching(pairs: dict, rows: int, cols: int):
    assert sorted(pairs) == list(range(rows))
    spaces = list(pairs.values())
    assert len(set(spaces)) == len(spaces)
    assert all(0 <= s < cols for s in spaces)


def test_matching_validity_and_cost_recomputation():
    rng = _rng(303)
    for _ in range(50):
        rows = int(rng.integers(1, 7))
        cols = int(rng.integers(rows, 10))
        m = rng.uniform(0.0, 100.0, (rows, cols))
        result = solve_rectangular(m)
        _assert_valid_matching(result.pairs, rows, cols)
        recomputed = math.fsum(m[i, j] for i, j in result.pairs.items())
        assert result.total_cost == pytest.approx(recomputed, rel=1e-9)


def test_integer_costs_recompute_exactly():
    rng = _rng(404)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        m = rng.integers(0, 1000, (n, n)).astype(float)
        sol = solve_square(m)
        assert sol.total_cost == sum(int(m[i, sol.perm[i]]) for i in range(n))


def test_scaling_entries_scales_cost_not_matching():
    rng = _rng(505)
    for factor in (0.5, 3.25, 1000.0):
        m = rng.uniform(0.0, 10.0, (6, 6))
        base = solve_square(m)
        scaled = solve_square(m * factor)
        assert scaled.perm == base.perm
        assert scaled.total_cost == pytest.approx(base.total_cost * factor, rel=1e-9)


def test_solver_is_deterministic():
    rng = _rng(606)
    m = rng.uniform(0.0, 10.0, (8, 11))
    first = solve_rectangular(m)
    again = solve_rectangular(m.copy())
    assert first == again


def test_assignment_equality_is_value_based():
    assert Assignment({0: 1}, 2.0) == Assignment({0: 1}, 2.0)
