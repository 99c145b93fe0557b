"""Surface-code fault-path decoding, threshold bounds, and overcount diagnostics."""

from .bounds import (
    BoundParams,
    BoundValue,
    GenericBound,
    MethodsSumCheck,
    disconnected_factor,
    generic_bound,
    methods_sum_check,
    p_path,
    p_ub,
    threshold_solve,
    w_ub,
    w_ub_prime,
    wub_blowup_scan,
)
from .code_lattice import CodeLattice, build_code, logical_support
from .decoder import Outcome, adjudicate, build_matching_problem, decode, extract_defects
from .enumeration import WalkCountTable, count_spanning_saw, count_walks
from .matcher import Matching, MatchingProblem, min_weight_matching, oracle_matching
from .montecarlo import (
    SimConfig,
    SimResult,
    SweepConfig,
    run_trials,
    sweep,
    wilson_interval,
)
from .syndrome_graph import (
    EAST,
    WEST,
    Edge,
    SyndromeGraph,
    boundary,
    build_syndrome_graph,
    chain_weight,
    edge_count,
    graph_distance,
    logical_class,
    xor_chains,
)
from .witness import (
    BreakingWitness,
    RadiusStats,
    exclusion_zone_stats,
    find_breaking_witness,
    verify_witness,
)

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "BoundValue",
    "BreakingWitness",
    "CodeLattice",
    "Edge",
    "EAST",
    "GenericBound",
    "Matching",
    "MatchingProblem",
    "MethodsSumCheck",
    "Outcome",
    "RadiusStats",
    "SimConfig",
    "SimResult",
    "SweepConfig",
    "SyndromeGraph",
    "WEST",
    "WalkCountTable",
    "adjudicate",
    "boundary",
    "build_code",
    "build_matching_problem",
    "build_syndrome_graph",
    "chain_weight",
    "count_spanning_saw",
    "count_walks",
    "decode",
    "disconnected_factor",
    "edge_count",
    "exclusion_zone_stats",
    "extract_defects",
    "find_breaking_witness",
    "generic_bound",
    "graph_distance",
    "logical_class",
    "logical_support",
    "methods_sum_check",
    "min_weight_matching",
    "oracle_matching",
    "p_path",
    "p_ub",
    "run_trials",
    "sweep",
    "threshold_solve",
    "verify_witness",
    "w_ub",
    "w_ub_prime",
    "wilson_interval",
    "wub_blowup_scan",
    "xor_chains",
]
