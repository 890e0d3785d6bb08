"""Batch parking assignment.

Streaming parking queries are held in a queue and dispatched in batches;
each batch becomes a small exact assignment problem through a candidate
subset of nearby spaces, so total guidance distance stays near the offline
optimum at a tiny fraction of the full solve's cost.
"""

from .assignment import (
    Assignment,
    CostMatrix,
    SquareSolution,
    brute_force_assign,
    pad_to_square,
    solve_rectangular,
    solve_square,
)
from .bench import (
    RunRecord,
    run_runtime_suite,
    run_subset_suite,
    run_waste_suite,
)
from .errors import (
    CapacityError,
    ConfigError,
    ConsistencyError,
    DimensionError,
    DomainError,
    FileFormatError,
    InvariantViolation,
    ParkplanError,
    SizeGuardError,
)
from .model import (
    DistanceSource,
    EuclideanDistanceSource,
    MatrixDistanceSource,
    QueryQueue,
    SpacePool,
)
from .planner import PlanOutcome, greedy_baseline, plan_batch, run_stream
from .reduction import (
    CandidateSet,
    IndexMaps,
    construct_reduced_matrix,
    construct_subset,
    extract_solution,
    plan_reduced,
    top_m_nearest,
)
from .scenarios import (
    Scenario,
    ScenarioConfig,
    adversarial_matrix,
    distance,
    generate,
    subset_ratio,
    waste,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "CandidateSet",
    "CapacityError",
    "ConfigError",
    "ConsistencyError",
    "CostMatrix",
    "DimensionError",
    "DistanceSource",
    "DomainError",
    "EuclideanDistanceSource",
    "FileFormatError",
    "IndexMaps",
    "InvariantViolation",
    "MatrixDistanceSource",
    "ParkplanError",
    "PlanOutcome",
    "QueryQueue",
    "RunRecord",
    "Scenario",
    "ScenarioConfig",
    "SizeGuardError",
    "SpacePool",
    "SquareSolution",
    "adversarial_matrix",
    "brute_force_assign",
    "construct_reduced_matrix",
    "construct_subset",
    "distance",
    "extract_solution",
    "generate",
    "greedy_baseline",
    "pad_to_square",
    "plan_batch",
    "plan_reduced",
    "run_runtime_suite",
    "run_stream",
    "run_subset_suite",
    "run_waste_suite",
    "solve_rectangular",
    "solve_square",
    "subset_ratio",
    "top_m_nearest",
    "waste",
    "__version__",
]
