"""Exact minimum-cost assignment on dense distance matrices.

``solve_square`` and ``solve_rectangular`` run a shortest-augmenting-path
Hungarian variant with row and column potentials: rows enter one at a time
and each insertion augments along the cheapest alternating path, found by a
Dijkstra-style scan over columns.  O(n^3) time and O(n^2) space on an n x n
input, with numpy doing the per-step column sweeps.

``brute_force_assign`` enumerates injections outright.  It exists to
cross-check the solver and deliberately shares no code with it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, SizeGuardError

# Permutation counts explode past this many rows; the oracle refuses rather
# than hang.
BRUTE_FORCE_MAX_ROWS = 8


@dataclass(frozen=True)
class CostMatrix:
    """Dense vehicle-by-space distance matrix.

    Rows index vehicles, columns index spaces.  Entries are float64, finite
    and non-negative; the wrapped array is a private copy marked read-only,
    so a validated matrix can be passed around without defensive copies.
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.float64, copy=True, order="C")
        if a.ndim != 2:
            raise DimensionError(f"cost matrix must be 2-D, got {a.ndim}-D")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(
                f"cost matrix must have at least one row and one column, got {a.shape}"
            )
        if not np.isfinite(a).all():
            raise DomainError("cost matrix entries must be finite")
        if (a < 0.0).any():
            raise DomainError("cost matrix entries must be non-negative")
        a.flags.writeable = False
        object.__setattr__(self, "entries", a)

    @property
    def rows(self) -> int:
        return int(self.entries.shape[0])

    @property
    def cols(self) -> int:
        return int(self.entries.shape[1])


def as_cost_matrix(matrix) -> CostMatrix:
    """Coerce an array-like to a validated CostMatrix (no-op if it is one)."""
    if isinstance(matrix, CostMatrix):
        return matrix
    return CostMatrix(np.asarray(matrix, dtype=np.float64))


@dataclass(frozen=True)
class SquareSolution:
    """Optimal row -> column permutation of a square matrix and its cost."""

    perm: tuple[int, ...]
    total_cost: float


@dataclass(frozen=True)
class Assignment:
    """A vehicle -> space matching together with its summed distance."""

    pairs: dict[int, int]
    total_cost: float


def _shortest_augmenting_paths(cost: np.ndarray) -> tuple[np.ndarray, float]:
    """Match every row of ``cost`` (rows <= cols) to a distinct column.

    Equivalent to zero-padding the matrix to square and solving that: the
    padded rows are virtual, cost nothing anywhere, and therefore never
    constrain where the real rows go.

    Rows enter in index order.  Whenever two columns offer the same reduced
    cost the lower column index wins, which pins down one deterministic
    optimum among ties.

    Returns ``(col_of, total)`` where ``col_of[i]`` is the column matched to
    row ``i`` and ``total`` is the exactly rounded sum of the chosen entries.
    """
    n_rows, n_cols = cost.shape
    u = np.zeros(n_rows)  # row potentials
    v = np.zeros(n_cols + 1)  # column potentials; slot n_cols backs the search root
    row_of = np.full(n_cols + 1, -1, dtype=np.intp)

    for row in range(n_rows):
        # Start an alternating-tree search at a virtual root column holding
        # the entering row.
        row_of[n_cols] = row
        j_cur = n_cols
        min_reduced = np.full(n_cols, np.inf)  # best slack seen per column
        origin = np.full(n_cols, n_cols, dtype=np.intp)  # predecessor column
        visited = np.zeros(n_cols + 1, dtype=bool)
        while True:
            visited[j_cur] = True
            i_cur = row_of[j_cur]
            open_idx = np.flatnonzero(~visited[:n_cols])
            reduced = cost[i_cur, open_idx] - u[i_cur] - v[open_idx]
            better = reduced < min_reduced[open_idx]
            improved = open_idx[better]
            min_reduced[improved] = reduced[better]
            origin[improved] = j_cur
            # argmin returns the first minimum, so ties fall to the lower
            # column index.
            k = int(np.argmin(min_reduced[open_idx]))
            j_next = int(open_idx[k])
            delta = float(min_reduced[j_next])
            tree = np.flatnonzero(visited)
            u[row_of[tree]] += delta
            v[tree] -= delta
            min_reduced[open_idx] -= delta
            j_cur = j_next
            if row_of[j_cur] < 0:
                break
        # Flip the alternating path back to the root.
        while j_cur != n_cols:
            j_prev = origin[j_cur]
            row_of[j_cur] = row_of[j_prev]
            j_cur = j_prev

    col_of = np.full(n_rows, -1, dtype=np.intp)
    matched = np.flatnonzero(row_of[:n_cols] >= 0)
    col_of[row_of[matched]] = matched
    total = math.fsum(float(cost[i, col_of[i]]) for i in range(n_rows))
    return col_of, total


def solve_square(matrix) -> SquareSolution:
    """Exact minimum-cost perfect matching of a square cost matrix."""
    cm = as_cost_matrix(matrix)
    if cm.rows != cm.cols:
        raise DimensionError(f"expected a square matrix, got {cm.rows}x{cm.cols}")
    col_of, total = _shortest_augmenting_paths(cm.entries)
    return SquareSolution(perm=tuple(int(j) for j in col_of), total_cost=total)


def pad_to_square(matrix) -> CostMatrix:
    """Append zero-cost virtual rows until the matrix is square.

    The virtual rows stand for "no vehicle": whatever columns they take are
    simply spaces left empty, at no cost.  Requires rows <= cols.
    """
    cm = as_cost_matrix(matrix)
    if cm.rows > cm.cols:
        raise DimensionError(
            f"cannot pad {cm.rows}x{cm.cols}: more vehicles than spaces"
        )
    if cm.rows == cm.cols:
        return cm
    padded = np.zeros((cm.cols, cm.cols))
    padded[: cm.rows] = cm.entries
    return CostMatrix(padded)


def solve_rectangular(matrix) -> Assignment:
    """Exact minimum-cost matching of every row of an M x N matrix, M <= N.

    Solves the zero-padded square problem implicitly: the solver is run on
    the real rows only, which costs exactly the same as padding, solving,
    and dropping the virtual rows (the cost equality is pinned by tests;
    under ties the two routes may pick different optimal matchings).
    Keeps memory at O(M*N) instead of O(N^2).
    """
    cm = as_cost_matrix(matrix)
    if cm.rows > cm.cols:
        raise DimensionError(
            f"no feasible assignment: {cm.rows} vehicles but only {cm.cols} spaces"
        )
    col_of, total = _shortest_augmenting_paths(cm.entries)
    pairs = {i: int(col_of[i]) for i in range(cm.rows)}
    return Assignment(pairs=pairs, total_cost=total)


def brute_force_assign(matrix) -> Assignment:
    """Reference oracle: try every injection of rows into columns.

    Among equal-cost optima the lexicographically smallest column sequence
    wins.  Refuses matrices with more than BRUTE_FORCE_MAX_ROWS rows; note
    the column count also multiplies the search, so keep both small.
    """
    cm = as_cost_matrix(matrix)
    if cm.rows > cm.cols:
        raise DimensionError(
            f"no feasible assignment: {cm.rows} vehicles but only {cm.cols} spaces"
        )
    if cm.rows > BRUTE_FORCE_MAX_ROWS:
        raise SizeGuardError(
            f"brute force is limited to {BRUTE_FORCE_MAX_ROWS} rows, got {cm.rows}"
        )
    entries = cm.entries
    best_cols: tuple[int, ...] | None = None
    best_cost = math.inf
    # itertools.permutations yields column tuples in lexicographic order, so
    # a strict < keeps the first (smallest) optimum.
    for cols in itertools.permutations(range(cm.cols), cm.rows):
        cost = math.fsum(float(entries[i, j]) for i, j in enumerate(cols))
        if cost < best_cost:
            best_cost = cost
            best_cols = cols
    assert best_cols is not None
    return Assignment(
        pairs={i: int(j) for i, j in enumerate(best_cols)}, total_cost=best_cost
    )
