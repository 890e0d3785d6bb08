"""Turn an online arrival stream into a sequence of offline batch solves.

Arrivals are held until ``m_param`` of them are waiting (the tail of the
stream may form a short final batch), then the whole batch is assigned at
once through the candidate-subset reduction.  When a batch is larger than
the remaining pool the earliest arrivals are served and the rest are
rejected, strictly first come first served.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .assignment import Assignment, solve_square
from .errors import DomainError
from .model import DistanceSource, QueryQueue, SpacePool
from .reduction import (
    construct_reduced_matrix,
    construct_subset,
    solve_reduced,
    top_m_nearest,
)


@dataclass
class PlanOutcome:
    """Everything a planning run produced, in batch order.

    ``subset_sizes`` has one entry per batch: the candidate-set size |S'|,
    or None for overflow batches, which skip the reduction.
    """

    assignments: list[Assignment] = field(default_factory=list)
    rejections: list[int] = field(default_factory=list)
    cumulative_cost: float = 0.0
    subset_sizes: list[int | None] = field(default_factory=list)

    def pairs(self) -> dict[int, int]:
        merged: dict[int, int] = {}
        for a in self.assignments:
            merged.update(a.pairs)
        return merged


@dataclass
class _BatchDispatch:
    assignment: Assignment
    rejections: list[int]
    subset_size: int | None


def _dispatch_batch(batch, pool: SpacePool, dist: DistanceSource) -> _BatchDispatch:
    """Assign one batch and consume the pool."""
    vehicles = tuple(int(v) for v in batch)
    if not vehicles:
        raise DomainError("batch must contain at least one vehicle")
    n_open = pool.available_count

    if len(vehicles) <= n_open:
        subset = construct_subset(vehicles, dist, available=pool.available_mask)
        matrix, maps = construct_reduced_matrix(subset, vehicles, dist)
        assignment = solve_reduced(matrix, maps, dist)
        dispatch = _BatchDispatch(assignment, [], len(subset))
    elif n_open == 0:
        dispatch = _BatchDispatch(Assignment({}, 0.0), list(vehicles), None)
    else:
        # Overflow: the first n_open arrivals share what is left, assigned
        # optimally among themselves; later arrivals are turned away.
        served = vehicles[:n_open]
        ids = pool.available_ids()
        entries = np.stack([dist.distances(v, ids) for v in served])
        solution = solve_square(entries)
        pairs = {v: int(ids[solution.perm[i]]) for i, v in enumerate(served)}
        assignment = Assignment(pairs=pairs, total_cost=solution.total_cost)
        dispatch = _BatchDispatch(assignment, list(vehicles[n_open:]), None)

    pool.assign(list(dispatch.assignment.pairs.values()))
    return dispatch


def plan_batch(batch, pool: SpacePool, dist: DistanceSource) -> tuple[Assignment, list[int]]:
    """Assign one held batch; returns the assignment and any rejections."""
    d = _dispatch_batch(batch, pool, dist)
    return d.assignment, d.rejections


def run_stream(arrivals, pool: SpacePool, dist: DistanceSource, m_param: int) -> PlanOutcome:
    """Plan a whole arrival stream with batches of up to ``m_param``."""
    queue = QueryQueue(tuple(int(v) for v in arrivals), m_param)
    outcome = PlanOutcome()
    for batch in queue.batches():
        d = _dispatch_batch(batch, pool, dist)
        outcome.assignments.append(d.assignment)
        outcome.rejections.extend(d.rejections)
        outcome.subset_sizes.append(d.subset_size)
    outcome.cumulative_cost = math.fsum(a.total_cost for a in outcome.assignments)
    return outcome


def greedy_baseline(arrivals, pool: SpacePool, dist: DistanceSource) -> PlanOutcome:
    """Serve each arrival immediately with its nearest free space.

    This is exactly what holding one query at a time degenerates to, and it
    must reproduce run_stream(m_param=1) outcome-for-outcome, including the
    empty per-arrival assignment recorded once the pool runs dry.
    """
    outcome = PlanOutcome()
    for v in arrivals:
        v = int(v)
        mask = pool.available_mask
        if not mask.any():
            outcome.assignments.append(Assignment({}, 0.0))
            outcome.subset_sizes.append(None)
            outcome.rejections.append(v)
            continue
        row = np.where(mask, dist.row(v), np.inf)
        space = int(top_m_nearest(row, 1)[0])
        assignment = Assignment({v: space}, float(dist.distance(v, space)))
        outcome.assignments.append(assignment)
        outcome.subset_sizes.append(1)
        pool.assign([space])
    outcome.cumulative_cost = math.fsum(a.total_cost for a in outcome.assignments)
    return outcome
