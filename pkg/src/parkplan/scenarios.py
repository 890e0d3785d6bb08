"""Scenario families, seeded generation, and the evaluation metrics.

Three families cover the interesting regimes:

* ``uniform``: vehicles and spaces scattered independently over the square
  world.  Easy for any planner; useful for oracle comparisons.
* ``clustered``: spaces sit in parking lots (roughly ``lot_size`` spaces
  around each uniformly placed lot centre) while vehicles arrive around a
  small number of demand hotspots, the way real queries pile up near a
  stadium or office block.  Contention for the same few lots is what
  separates batch planning from nearsighted dispatch.
* ``adversarial``: no geometry at all, just the explicit power matrix with
  entry (i, j) = j**i (1-based).  Greedy dispatch walks straight into its
  exponentially bad diagonal, which makes it the standard stress case.

All randomness flows through one seeded PCG64 generator per scenario, so a
(kind, sizes, seed) tuple reproduces bit-identical coordinates everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .assignment import CostMatrix
from .errors import ConfigError, DomainError, InvariantViolation, SizeGuardError
from .model import DistanceSource, EuclideanDistanceSource, MatrixDistanceSource, SpacePool

SCENARIO_KINDS = ("uniform", "clustered", "adversarial")

DEFAULT_LOT_SIZE = 300
DEFAULT_WORLD_EXTENT = 10_000.0

# Geometry of the clustered family, as fractions of the world extent.
LOT_RADIUS_FRACTION = 1 / 200
HOTSPOT_RADIUS_FRACTION = 1 / 100
VEHICLES_PER_HOTSPOT = 100

# 12**12 is still exact in float64; bigger powers would not be.
ADVERSARIAL_MAX_N = 12


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to regenerate a scenario."""

    kind: str
    n_vehicles: int
    n_spaces: int
    lot_size: int = DEFAULT_LOT_SIZE
    world_extent: float = DEFAULT_WORLD_EXTENT
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in SCENARIO_KINDS:
            raise ConfigError(
                f"unknown scenario kind {self.kind!r}, expected one of {SCENARIO_KINDS}"
            )
        if self.n_vehicles < 0:
            raise ConfigError(f"n_vehicles must be >= 0, got {self.n_vehicles}")
        if self.n_spaces < 1:
            raise ConfigError(f"n_spaces must be >= 1, got {self.n_spaces}")
        if self.lot_size < 1:
            raise ConfigError(f"lot_size must be >= 1, got {self.lot_size}")
        if not (math.isfinite(self.world_extent) and self.world_extent > 0):
            raise ConfigError(f"world_extent must be positive, got {self.world_extent}")
        if self.seed < 0:
            raise ConfigError(f"seed must be >= 0, got {self.seed}")
        if self.kind == "adversarial":
            if self.n_vehicles != self.n_spaces:
                raise ConfigError(
                    "adversarial scenarios are square: "
                    f"n_vehicles={self.n_vehicles} != n_spaces={self.n_spaces}"
                )

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return replace(self, seed=seed)


@dataclass(frozen=True)
class Scenario:
    """A generated problem instance.

    Geometric kinds carry coordinate arrays and leave ``matrix`` as None;
    the adversarial kind is the other way round.
    """

    config: ScenarioConfig
    vehicle_xy: np.ndarray | None
    space_xy: np.ndarray | None
    matrix: CostMatrix | None

    @property
    def n_vehicles(self) -> int:
        return self.config.n_vehicles

    @property
    def n_spaces(self) -> int:
        return self.config.n_spaces

    def arrivals(self) -> tuple[int, ...]:
        """Vehicle ids in arrival order (generation order is arrival order)."""
        return tuple(range(self.config.n_vehicles))

    def distance_source(self) -> DistanceSource:
        if self.matrix is not None:
            return MatrixDistanceSource(self.matrix)
        return EuclideanDistanceSource(self.vehicle_xy, self.space_xy)

    def space_pool(self) -> SpacePool:
        return SpacePool(self.config.n_spaces)


def rng_for(seed: int) -> np.random.Generator:
    """The one RNG construction used everywhere: PCG64 under a Generator."""
    return np.random.Generator(np.random.PCG64(int(seed)))


def adversarial_matrix(n: int) -> CostMatrix:
    """The n x n power matrix, entry (i, j) = j**i with 1-based indices.

    Row i quotes the j-th space at j**i, so the cheap-looking diagonal a
    nearsighted dispatcher collects costs 1**1 + 2**2 + ... + n**n while the
    optimum takes the anti-diagonal.  Entries stay exactly representable up
    to n = ADVERSARIAL_MAX_N.
    """
    n = int(n)
    if not 1 <= n <= ADVERSARIAL_MAX_N:
        raise SizeGuardError(
            f"power matrix size must be in [1, {ADVERSARIAL_MAX_N}], got {n}"
        )
    base = np.arange(1, n + 1, dtype=np.float64)
    return CostMatrix(base[None, :] ** base[:, None])


def _disc_jitter(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """n points uniform on a disc of the given radius, as (n, 2) offsets."""
    r = radius * np.sqrt(rng.random(n))
    theta = rng.random(n) * (2.0 * math.pi)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def generate(config: ScenarioConfig) -> Scenario:
    """Materialise a scenario from its config, deterministically in the seed."""
    rng = rng_for(config.seed)

    if config.kind == "adversarial":
        return Scenario(
            config=config,
            vehicle_xy=None,
            space_xy=None,
            matrix=adversarial_matrix(config.n_spaces),
        )

    extent = float(config.world_extent)
    if config.kind == "uniform":
        space_xy = rng.uniform(0.0, extent, (config.n_spaces, 2))
        vehicle_xy = rng.uniform(0.0, extent, (config.n_vehicles, 2))
    else:  # clustered
        n_lots = -(-config.n_spaces // config.lot_size)  # ceil division
        lot_centres = rng.uniform(0.0, extent, (n_lots, 2))
        lot_of_space = np.repeat(np.arange(n_lots), config.lot_size)[: config.n_spaces]
        space_xy = lot_centres[lot_of_space] + _disc_jitter(
            rng, config.n_spaces, extent * LOT_RADIUS_FRACTION
        )
        n_hotspots = max(1, config.n_vehicles // VEHICLES_PER_HOTSPOT)
        hotspot_centres = rng.uniform(0.0, extent, (n_hotspots, 2))
        hotspot_of_vehicle = rng.integers(0, n_hotspots, config.n_vehicles)
        vehicle_xy = hotspot_centres[hotspot_of_vehicle] + _disc_jitter(
            rng, config.n_vehicles, extent * HOTSPOT_RADIUS_FRACTION
        )

    return Scenario(config=config, vehicle_xy=vehicle_xy, space_xy=space_xy, matrix=None)


def distance(a, b) -> float:
    """Planar Euclidean distance between two (x, y) points."""
    p = np.asarray(a, dtype=np.float64)
    q = np.asarray(b, dtype=np.float64)
    if p.shape != (2,) or q.shape != (2,):
        raise DomainError(f"expected (x, y) points, got shapes {p.shape} and {q.shape}")
    return float(np.hypot(p[0] - q[0], p[1] - q[1]))


def waste(approx_cost: float, exact_cost: float) -> float:
    """Relative extra distance of an approximate plan over the exact optimum.

    Defined as (approx - exact) / exact.  An approximate cost below the
    exact optimum is impossible for a feasible plan, so that raises rather
    than returning a negative number.
    """
    approx = float(approx_cost)
    exact = float(exact_cost)
    if not (math.isfinite(approx) and math.isfinite(exact)):
        raise DomainError("costs must be finite")
    if exact <= 0.0:
        raise DomainError(f"exact cost must be positive, got {exact}")
    if approx < exact:
        raise InvariantViolation(
            f"approximate cost {approx!r} is below the exact optimum {exact!r}"
        )
    return (approx - exact) / exact


def subset_ratio(subset_size: int, m: int) -> float:
    """|S'| relative to the batch size m; near 1 means the union barely grew."""
    if int(m) < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    if int(subset_size) < 0:
        raise DomainError(f"subset size must be >= 0, got {subset_size}")
    return float(subset_size) / float(m)
