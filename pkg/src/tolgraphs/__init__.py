"""Exact intersection models for trapezoid, parallelogram, permutation
and tolerance graphs; acyclic orientations of paired representations;
neighborhood-domination vertex splitting; and a monotone-NAE-3-SAT
gadget pipeline with brute-force oracles."""

from ._core import backend_name
from .graphs import Graph, GuardExceeded
from .geometry import (
    Line,
    ParallelogramRep,
    PermutationRep,
    ToleranceRep,
    Trapezoid,
    TrapezoidRep,
    graph_of,
    graph_of_permutation_rep,
    graph_of_tolerance_rep,
    graph_of_trapezoid_rep,
    parallelogram_to_tolerance,
    renormalize,
    tolerance_to_parallelogram,
    verify_rep,
)
from .orientation import (
    PairSet,
    find_acyclic_flip,
    is_acyclic_trapezoid_rep,
    is_acyclic_wrt_pairs,
    parallelogramize,
    split_into_lines,
    transitive_orientation,
)
from .reduction import (
    MonotoneCnf,
    build_line_gadget,
    build_merged_gadget,
    build_padded_gadget,
    parse_cnf,
)
from .splitting import SplitResult, split_vertex, split_vertices
from .oracles import (
    check_equivalence,
    is_comparability,
    is_permutation_graph,
    nae_sat_bruteforce,
)

__version__ = "0.1.0"
