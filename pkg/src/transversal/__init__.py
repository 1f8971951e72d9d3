"""Graph transversals: exact search, verified subroutines and threshold sweeps."""

from .absorber import AbsorberError, AbsorberTemplate, absorb_colors, build_absorber
from .bandwidth import (
    BandwidthOrdering,
    BandwidthPartition,
    BudgetExhausted,
    FragmentedIntervals,
    InsufficientRoom,
    ProperColoring,
    bandwidth_partition,
    build_fragmented,
    chromatic_coloring,
    compute_ordering,
    proper_coloring,
    stretch,
    verify_admission,
)
from .exact import Root
from .fraction import color_availability, fraction_graph
from .generators import (
    InstanceSpec,
    TargetSpec,
    extremal_instance,
    gen_collection,
    gen_target,
)
from .graph import (
    Graph,
    GraphCollection,
    GraphError,
    common_neighborhood,
    enumerate_cliques,
    extend_clique,
    min_degree,
)
from .reduced import (
    CliqueWalk,
    KFactor,
    check_clique_walk,
    clique_walk,
    kk_factor,
    kk_factor_through,
    three_independent_matching,
)
from .regularity import (
    PairReport,
    Verdict,
    pair_density,
    pair_report,
    super_regular_core,
    test_quasi_random,
    test_regular_exact,
    typical_pairs,
)
from .solver import (
    Outcome,
    SearchConfig,
    SearchResult,
    SearchStats,
    TransversalEmbedding,
    find_rainbow_coloring,
    find_transversal,
    verify_transversal,
)
from .sweep import SweepGrid, threshold_sweep

__version__ = "0.1.0"
