"""colorislands: partition colored point sets into pairwise disjoint
colorful islands (convex-hull-disjoint groups), with exact rational
arithmetic throughout and independent brute-force verification."""

from .errors import (
    BudgetExceededError,
    CapacityError,
    ColorIslandsError,
    DegeneratePointSetError,
    GenerationError,
    HallInfeasibleError,
    HypothesisViolatedError,
    InstanceFormatError,
    InternalInvariantError,
    MergeNotGuaranteedError,
    PreconditionError,
)
from .geometry import (
    ColoredPointSet,
    Hull,
    IslandPartition,
    OrientedCut,
    Point,
    convex_hull,
    cut_from_normal,
    cut_through,
    halfspace_counts,
    hulls_disjoint,
    is_general_position,
    is_island,
    orientation,
    point_in_hull,
    require_general_position,
    verify_island_partition,
)
from .hall import (
    ColorProfile,
    HallReport,
    check_hall,
    colorful_tuple_partition,
    merge_colors,
    tightness_family,
)
from .planar import (
    PlanarInstance,
    SigmaTable,
    equipartition_divisible,
    partition_plane,
    sigma_scan,
    three_cutting,
)
from .sandwich import (
    BalancedInstance,
    SpecialCut,
    find_bisecting_cut,
    is_balanced,
    partition_rd,
    round_cut_reference,
    special_cut,
)
from .oracle import (
    BruteForceResult,
    ConjectureReport,
    SearchBudget,
    brute_force_partition,
    conjecture_scan,
    enumerate_islands,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
