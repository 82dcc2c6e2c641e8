"""cyclepack: vertex-disjoint long even cycles in bipartite graphs.

Library + CLI for constructing packings of disjoint even cycles under a
minimum-degree hypothesis, verifying them independently, and certifying small
instances with an exact oracle.
"""

from .graphs import (
    BipartiteGraph,
    GraphError,
    GraphView,
    ParseError,
    gen_complete,
    gen_random_mindeg,
    gen_sharpness,
    parse_graph,
    serialize_graph,
)
from .matching import Matching, longest_alternating_path, max_matching
from .packer import (
    INFEASIBLE,
    PACKED,
    UNKNOWN,
    ExchangeContext,
    OracleLimitError,
    Packing,
    PackResult,
    SearchState,
    brute_force_pack,
    pack,
)
from .profiles import CycleProfile, ProfileError, degree_threshold, make_profile, uniform_profile
from .verify import VerificationReport, check_hypotheses, verify_packing

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "GraphView",
    "GraphError",
    "ParseError",
    "parse_graph",
    "serialize_graph",
    "gen_complete",
    "gen_random_mindeg",
    "gen_sharpness",
    "CycleProfile",
    "ProfileError",
    "make_profile",
    "degree_threshold",
    "uniform_profile",
    "Matching",
    "max_matching",
    "longest_alternating_path",
    "Packing",
    "PackResult",
    "SearchState",
    "ExchangeContext",
    "OracleLimitError",
    "pack",
    "brute_force_pack",
    "PACKED",
    "INFEASIBLE",
    "UNKNOWN",
    "VerificationReport",
    "verify_packing",
    "check_hypotheses",
    "__version__",
]
