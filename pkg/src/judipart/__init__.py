"""judipart: judicious bipartitions of digraphs with minimum outdegree bounds.

Library surface: build or load a digraph, run the partition engine, inspect
the certificate; or call the pieces (gap solver, tight components, exhaustive
oracle, generators) directly.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .digraph import (
    Bipartition,
    CutValue,
    Digraph,
    VertexStats,
    cut_counts,
    e_between,
    format_edge_list,
    from_arc_list,
    load_edge_list,
    max_degree,
    min_outdegree,
    parse_edge_list,
    save_edge_list,
    vertex_stats,
)
from .errors import (
    DuplicateArcError,
    EdgeListParseError,
    EmptyGraphError,
    EvenOrderError,
    GenParamError,
    HugeSetEvenError,
    IdentityViolationError,
    InfeasibleParamsError,
    InputError,
    JudipartError,
    LimitError,
    LoopArcError,
    MinOutdegreeWarning,
    NotApplicableError,
    PartitionError,
    RegularityFailureError,
    StateLimitError,
    TooLargeError,
    TooSmallError,
    VertexOutOfRangeError,
    XTooLargeError,
)
from .gap import GapResult, MfMb, gap, huge_and_residuals, mf_mb, min_gap_partition
from .oracle import OracleGapResult, OracleResult, exact_max_min_cut, exact_min_gap
from .tight import (
    TightReport,
    blocks,
    essential_tight_components,
    is_tight,
    underlying_adjacency,
    underlying_components,
)
from .generators import (
    FAMILIES,
    gen_eulerian_complete,
    gen_random_minout,
    gen_skew_d4,
    gen_skew_d6,
    gen_star_triangle,
    gen_tight_union,
)
from .certify import (
    CandidateScore,
    Certificate,
    CheckRecord,
    QuantityBundle,
    build_certificate,
    check_candidate_forms,
    check_d4_chain,
    check_gap_dichotomy,
    check_huge_regimes,
    check_min_gap_bounds,
    compute_bundle,
    eval_f_h,
    render_text,
    verify_record,
)
from .engine import (
    CandidateXPartition,
    DegreeSplit,
    EngineConfig,
    PartitionOutcome,
    candidate_x_partitions,
    extend_partition_randomized,
    extension_trial_cuts,
    local_improve,
    mingap_candidate,
    partition,
    split_by_degree,
    uniform_split_applicable,
    uniform_split_bound,
)
