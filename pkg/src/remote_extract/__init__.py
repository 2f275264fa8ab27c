"""Remote GHZ / EPR extraction volumes for bipartite graph states."""

from .conditions import (
    StarPolicy,
    check_condition_I,
    check_condition_II,
    ensure_star_vertices,
    pair_compatible,
)
from .extraction import (
    CandidatePolicy,
    ExtractionConfig,
    ExtractionResult,
    HostPartition,
    expand,
    find_a,
    materialize_ghz,
    remote_extraction,
    seed_families,
    verify_result,
)
from .graph_core import (
    BipartiteGraph,
    GeneralGraph,
    build_bipartite,
    delete_vertices,
    is_connected,
    is_remote,
    opposite_remote_set,
    remote_intersection,
    remote_union,
    star_vertices,
)

__version__ = "0.1.0"
