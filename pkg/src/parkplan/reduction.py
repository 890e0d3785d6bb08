"""Candidate-subset reduction: shrink an M x N assignment to a small square one.

Solving M vehicles against all N spaces is pointless when N is huge; almost
every column can never appear in an optimum.  Instead, take each vehicle's
``depth`` nearest available spaces, union them into one candidate set S',
and solve the |S'| x |S'| problem built from those columns (virtual rows at
zero cost make it square).  With depth equal to the batch size, an exchange
argument shows some optimum of the full batch problem lives entirely inside
S', so the reduced solve loses nothing; smaller depths trade quality for
speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assignment import Assignment, CostMatrix, SquareSolution, solve_rectangular
from .errors import CapacityError, ConsistencyError, DomainError
from .model import DistanceSource, SpacePool


@dataclass(frozen=True)
class CandidateSet:
    """Distinct space ids in first-discovery order."""

    space_ids: tuple[int, ...]

    def __post_init__(self) -> None:
        ids = tuple(int(s) for s in self.space_ids)
        if len(set(ids)) != len(ids):
            raise ConsistencyError("candidate set contains a duplicate space id")
        object.__setattr__(self, "space_ids", ids)
        object.__setattr__(self, "_members", frozenset(ids))

    def __len__(self) -> int:
        return len(self.space_ids)

    def __contains__(self, space: int) -> bool:
        return int(space) in self._members


@dataclass(frozen=True)
class IndexMaps:
    """Reduced index -> original id maps; None marks a virtual vehicle row."""

    vehicle_map: tuple[int | None, ...]
    space_map: tuple[int, ...]


def top_m_nearest(row, m: int) -> np.ndarray:
    """Ids of the ``m`` closest spaces in ``row``, sorted by (distance, id).

    Entries of +inf mark unavailable spaces and are never picked.  Runs in
    O(N) via partial selection, not a full sort.  Raises CapacityError when
    fewer than ``m`` finite entries exist.
    """
    r = np.asarray(row, dtype=np.float64)
    if r.ndim != 1:
        raise DomainError(f"expected a 1-D distance row, got {r.ndim}-D")
    m = int(m)
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    if np.isnan(r).any():
        raise DomainError("distance row contains NaN")
    n_open = int(np.count_nonzero(np.isfinite(r)))
    if n_open < m:
        raise CapacityError(f"need {m} available spaces, only {n_open} left")

    if m == n_open:
        chosen = np.flatnonzero(np.isfinite(r))
    else:
        # m-th smallest value, then everything strictly below it, then the
        # lowest-id entries tied at that value.
        kth = np.partition(r, m - 1)[m - 1]
        below = np.flatnonzero(r < kth)
        need = m - below.size
        tied = np.flatnonzero(r == kth)
        if tied.size > need:
            tied = np.partition(tied, need - 1)[:need]
        chosen = np.concatenate([below, tied])
    order = np.lexsort((chosen, r[chosen]))
    return chosen[order].astype(np.intp)


def construct_subset(
    queue, dist: DistanceSource, *, available=None, depth: int | None = None
) -> CandidateSet:
    """Union of every queued vehicle's ``depth`` nearest available spaces.

    ``depth`` defaults to the queue length, the setting under which the
    reduced solve is exact for the batch.  ``available`` is an optional
    boolean mask; spaces masked off are treated as infinitely far.  Ids keep
    first-discovery order so repeated runs build identical sets.
    """
    vehicles = tuple(int(v) for v in queue)
    if not vehicles:
        raise DomainError("queue must contain at least one vehicle")
    depth = len(vehicles) if depth is None else int(depth)
    if depth < 1:
        raise DomainError(f"depth must be at least 1, got {depth}")
    mask = None
    if available is not None:
        mask = np.asarray(available, dtype=bool)
        if mask.shape != (dist.n_spaces,):
            raise ConsistencyError(
                f"availability mask has shape {mask.shape}, expected ({dist.n_spaces},)"
            )
        n_open = int(np.count_nonzero(mask))
    else:
        n_open = dist.n_spaces
    if n_open < depth:
        raise CapacityError(f"need {depth} available spaces, only {n_open} left")

    seen: dict[int, None] = {}
    for v in vehicles:
        row = dist.row(v)
        if mask is not None:
            row = np.where(mask, row, np.inf)
        for s in top_m_nearest(row, depth):
            seen.setdefault(int(s))
    return CandidateSet(tuple(seen))


def construct_reduced_matrix(
    subset: CandidateSet, queue, dist: DistanceSource
) -> tuple[CostMatrix, IndexMaps]:
    """Square |S'| x |S'| matrix over the candidate columns, plus id maps.

    Real vehicles fill the top rows; the remaining virtual rows are all
    zeros, so they soak up leftover candidate spaces for free.
    """
    vehicles = tuple(int(v) for v in queue)
    n_red = len(subset)
    if len(vehicles) > n_red:
        raise ConsistencyError(
            f"candidate set ({n_red} spaces) is smaller than its queue ({len(vehicles)})"
        )
    ids = np.asarray(subset.space_ids, dtype=np.intp)
    entries = np.zeros((n_red, n_red))
    for i, v in enumerate(vehicles):
        entries[i] = dist.distances(v, ids)
    maps = IndexMaps(
        vehicle_map=vehicles + (None,) * (n_red - len(vehicles)),
        space_map=subset.space_ids,
    )
    return CostMatrix(entries), maps


def _relabel(reduced_pairs: dict[int, int], maps: IndexMaps,
             dist: DistanceSource, reference_cost: float) -> Assignment:
    """Map reduced indices back to original ids and re-audit the cost.

    The total is recomputed from the original distances and must equal the
    reduced solve's cost exactly: both are exactly rounded sums of the same
    entry multiset (virtual rows contribute zeros), so any difference means
    the maps and the solved matrix came from different problems.
    """
    pairs: dict[int, int] = {}
    for i, j in reduced_pairs.items():
        vehicle = maps.vehicle_map[i]
        if vehicle is None:
            continue
        pairs[vehicle] = maps.space_map[j]
    total = math.fsum(dist.distance(v, s) for v, s in pairs.items())
    if total != reference_cost:
        raise ConsistencyError(
            f"recomputed cost {total!r} != reduced cost {reference_cost!r}; "
            "index maps do not match the solved matrix"
        )
    return Assignment(pairs=pairs, total_cost=total)


def extract_solution(
    solution: SquareSolution, maps: IndexMaps, dist: DistanceSource
) -> Assignment:
    """Relabel a solved reduced matrix back to original vehicle and space ids."""
    n_red = len(maps.space_map)
    if len(solution.perm) != n_red or len(maps.vehicle_map) != n_red:
        raise ConsistencyError(
            f"solution size {len(solution.perm)} does not match maps "
            f"({len(maps.vehicle_map)} vehicles, {n_red} spaces)"
        )
    reduced_pairs = dict(enumerate(solution.perm))
    return _relabel(reduced_pairs, maps, dist, solution.total_cost)


def solve_reduced(matrix: CostMatrix, maps: IndexMaps, dist: DistanceSource) -> Assignment:
    """Solve a reduced matrix and relabel, skipping its virtual rows.

    Virtual rows are all zeros, so matching them costs nothing and teaches
    us nothing; solving just the real top block rectangularly returns the
    same minimum cost as the full square solve while cutting the work from
    O(N'^3) to O(M * N'-ish), which is what keeps huge pools fast.
    """
    n_real = sum(1 for v in maps.vehicle_map if v is not None)
    if any(v is None for v in maps.vehicle_map[:n_real]):
        raise ConsistencyError("virtual vehicle rows must follow all real rows")
    real_block = matrix.entries[:n_real]
    solved = solve_rectangular(real_block)
    return _relabel(solved.pairs, maps, dist, solved.total_cost)


def plan_reduced(queue, pool, dist: DistanceSource, m_param: int | None = None) -> Assignment:
    """Full reduction pipeline for one batch: subset, square solve, relabel.

    ``pool`` may be a SpacePool, a boolean availability mask, or None for
    "everything is free".  ``m_param`` is the per-vehicle candidate depth and
    defaults to the batch size.  The pool is only read, never mutated.
    """
    if pool is None or isinstance(pool, np.ndarray):
        mask = pool
    elif isinstance(pool, SpacePool):
        mask = pool.available_mask
    else:
        raise DomainError(f"unsupported pool type: {type(pool).__name__}")
    subset = construct_subset(queue, dist, available=mask, depth=m_param)
    matrix, maps = construct_reduced_matrix(subset, queue, dist)
    return solve_reduced(matrix, maps, dist)
