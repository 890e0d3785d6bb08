"""Problem state shared by the reduction and the planner.

A DistanceSource answers "how far is vehicle i from space j" without
promising anything about storage: the matrix-backed source holds the full
table, the coordinate-backed source computes rows on demand and never
materialises the M x N matrix, which is what makes very large space pools
affordable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assignment import CostMatrix, as_cost_matrix
from .errors import ConfigError, ConsistencyError, DimensionError, DomainError


class DistanceSource:
    """Read-only vehicle -> space distances."""

    @property
    def n_vehicles(self) -> int:
        raise NotImplementedError

    @property
    def n_spaces(self) -> int:
        raise NotImplementedError

    def row(self, vehicle: int) -> np.ndarray:
        """Distances from one vehicle to every space (length n_spaces)."""
        raise NotImplementedError

    def distances(self, vehicle: int, space_ids) -> np.ndarray:
        """Distances from one vehicle to the given spaces, in their order."""
        raise NotImplementedError

    def distance(self, vehicle: int, space: int) -> float:
        one = self.distances(vehicle, np.asarray([space], dtype=np.intp))
        return float(one[0])

    def full_matrix(self) -> CostMatrix:
        """Materialise the whole matrix.  O(M*N) memory; avoid at scale."""
        rows = np.stack([self.row(i) for i in range(self.n_vehicles)])
        return as_cost_matrix(rows)

    def _check_vehicle(self, vehicle: int) -> int:
        v = int(vehicle)
        if not 0 <= v < self.n_vehicles:
            raise DomainError(f"vehicle id {v} out of range [0, {self.n_vehicles})")
        return v


class MatrixDistanceSource(DistanceSource):
    """Distances read straight out of an explicit cost matrix."""

    def __init__(self, matrix) -> None:
        self._matrix = as_cost_matrix(matrix)

    @property
    def n_vehicles(self) -> int:
        return self._matrix.rows

    @property
    def n_spaces(self) -> int:
        return self._matrix.cols

    def row(self, vehicle: int) -> np.ndarray:
        v = self._check_vehicle(vehicle)
        return self._matrix.entries[v]  # read-only view

    def distances(self, vehicle: int, space_ids) -> np.ndarray:
        v = self._check_vehicle(vehicle)
        ids = np.asarray(space_ids, dtype=np.intp)
        return self._matrix.entries[v, ids]

    def full_matrix(self) -> CostMatrix:
        return self._matrix


class EuclideanDistanceSource(DistanceSource):
    """Distances derived on demand from planar coordinates.

    Holds only the two coordinate arrays; a row costs O(N) time and O(N)
    scratch, nothing is cached.
    """

    def __init__(self, vehicle_xy, space_xy) -> None:
        self._vehicles = _checked_coords(vehicle_xy, "vehicle")
        self._spaces = _checked_coords(space_xy, "space")

    @property
    def n_vehicles(self) -> int:
        return int(self._vehicles.shape[0])

    @property
    def n_spaces(self) -> int:
        return int(self._spaces.shape[0])

    def row(self, vehicle: int) -> np.ndarray:
        v = self._check_vehicle(vehicle)
        x, y = self._vehicles[v]
        return np.hypot(self._spaces[:, 0] - x, self._spaces[:, 1] - y)

    def distances(self, vehicle: int, space_ids) -> np.ndarray:
        v = self._check_vehicle(vehicle)
        ids = np.asarray(space_ids, dtype=np.intp)
        x, y = self._vehicles[v]
        pts = self._spaces[ids]
        # Same np.hypot as row(), so gathered values are bit-identical to
        # slicing a full row.
        return np.hypot(pts[:, 0] - x, pts[:, 1] - y)


def _checked_coords(xy, what: str) -> np.ndarray:
    a = np.asarray(xy, dtype=np.float64)
    if a.ndim != 2 or a.shape[1] != 2:
        raise DimensionError(f"{what} coordinates must be (n, 2), got {a.shape}")
    if a.shape[0] < 1:
        raise DimensionError(f"need at least one {what}")
    if not np.isfinite(a).all():
        raise DomainError(f"{what} coordinates must be finite")
    return a


class SpacePool:
    """Tracks which spaces are still free.

    Spaces are consumed by ``assign`` and never released; a consistency
    error on a repeated id is how double-booking bugs surface.
    """

    def __init__(self, n_spaces: int) -> None:
        n = int(n_spaces)
        if n < 1:
            raise DomainError(f"pool needs at least one space, got {n}")
        self._available = np.ones(n, dtype=bool)

    @property
    def n_spaces(self) -> int:
        return int(self._available.shape[0])

    @property
    def available_mask(self) -> np.ndarray:
        """Boolean mask over space ids; a copy, safe to scribble on."""
        return self._available.copy()

    @property
    def available_count(self) -> int:
        return int(np.count_nonzero(self._available))

    def available_ids(self) -> np.ndarray:
        return np.flatnonzero(self._available)

    def is_available(self, space: int) -> bool:
        s = int(space)
        if not 0 <= s < self.n_spaces:
            raise DomainError(f"space id {s} out of range [0, {self.n_spaces})")
        return bool(self._available[s])

    def assign(self, space_ids) -> None:
        """Mark the given spaces taken; all must currently be free."""
        ids = np.asarray(list(space_ids), dtype=np.intp)
        if ids.size == 0:
            return
        if ids.min() < 0 or ids.max() >= self.n_spaces:
            raise DomainError("space id out of range")
        if len(np.unique(ids)) != ids.size or not self._available[ids].all():
            taken = sorted(set(int(s) for s in ids if not self._available[s]))
            raise ConsistencyError(f"spaces already taken or repeated: {taken}")
        self._available[ids] = False


@dataclass(frozen=True)
class QueryQueue:
    """Pending parking queries in arrival order, dispatched hold_size at a time."""

    vehicle_ids: tuple[int, ...]
    hold_size: int

    def __post_init__(self) -> None:
        if int(self.hold_size) != self.hold_size or self.hold_size < 1:
            raise ConfigError(f"hold size must be a positive integer, got {self.hold_size}")
        ids = tuple(int(v) for v in self.vehicle_ids)
        if len(set(ids)) != len(ids):
            raise ConfigError("queue contains a duplicate vehicle id")
        object.__setattr__(self, "vehicle_ids", ids)
        object.__setattr__(self, "hold_size", int(self.hold_size))

    def __len__(self) -> int:
        return len(self.vehicle_ids)

    def batches(self):
        """Yield consecutive chunks of at most hold_size vehicles."""
        for start in range(0, len(self.vehicle_ids), self.hold_size):
            yield self.vehicle_ids[start : start + self.hold_size]
