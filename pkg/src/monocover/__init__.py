"""monocover: monochromatic tree covers of r-edge-coloured graphs.

The library couples three layers:

* exact primitives on r-uniform r-partite hypergraphs and their duality with
  r-edge-coloured multigraphs (`hypergraph`, `duality`),
* verification and generation of Ryser-stable sequences, the machine-checkable
  case analyses behind tau <= (r-1) nu covers (`stability`, `sequences`),
* a transference engine that converts a certified sequence plus a metric
  family into a cover by few balls, and hence an edge-coloured graph of
  bounded independence number into monochromatic trees with certified radius
  bounds (`metrics`, `abdual`, `engine`).

Everything is exact: distances are integers or rationals, schedule constants
are kept as symbolic powers, and every inequality the engine relies on is
asserted with integer arithmetic at run time.
"""

from .duality import (
    ColoredMultigraph,
    colored_to_hyper,
    hyper_to_colored,
    independence_number,
)
from .engine import (
    ball_cover,
    end_to_end,
    paper_schedule,
    adaptive_schedule,
    tree_cover,
    validate_tree_cover,
)
from .hypergraph import (
    PartiteHypergraph,
    Sunflower,
    canonical_edge_extensions,
    contains_copy,
    extend_matching_via_sunflowers,
    find_sunflower,
    is_isomorphic,
    matching_hypergraph,
    matching_number,
    maximum_matching,
    single_edge,
    sunflower_hypergraph,
    vertex_cover_min,
)
from .metrics import MetricFamily, ball, graph_metric, is_metric
from .sequences import bundled_pairs, bundled_sequence
from .stability import (
    StableSequence,
    WitnessedHypergraph,
    check_witness,
    cover_from_sequence,
    generate_basic_sequence,
    verify_sequence,
)

__all__ = [
    "ColoredMultigraph",
    "MetricFamily",
    "PartiteHypergraph",
    "StableSequence",
    "Sunflower",
    "WitnessedHypergraph",
    "adaptive_schedule",
    "ball",
    "ball_cover",
    "bundled_pairs",
    "bundled_sequence",
    "canonical_edge_extensions",
    "check_witness",
    "colored_to_hyper",
    "contains_copy",
    "cover_from_sequence",
    "end_to_end",
    "extend_matching_via_sunflowers",
    "find_sunflower",
    "generate_basic_sequence",
    "graph_metric",
    "hyper_to_colored",
    "independence_number",
    "is_isomorphic",
    "is_metric",
    "matching_hypergraph",
    "matching_number",
    "maximum_matching",
    "paper_schedule",
    "single_edge",
    "sunflower_hypergraph",
    "tree_cover",
    "validate_tree_cover",
    "verify_sequence",
    "vertex_cover_min",
]

__version__ = "0.1.0"
