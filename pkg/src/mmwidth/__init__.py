"""Exact maximum-matching-width toolkit.

Exact solvers for mm-width, treewidth, and branchwidth at desk scale;
tree representations of graphs with the explicit split-graph
construction; and the PARTITION -> PARTITION-3 -> split-graph reduction
chain with end-to-end certification.
"""

from .cuts import (
    CutFunction,
    boundary_cut,
    boundary_cut_function,
    check_symmetric_submodular,
    mm_cut,
    mm_cut_function,
)
from .decomposition import (
    BranchDecomposition,
    ChainReport,
    TernaryTree,
    WidthResult,
    branchwidth_exact,
    check_inequality_chain,
    enumerate_decompositions,
    exact_f_width,
    f_width_of,
    induced_partition,
    mmw_exact,
    treewidth_exact,
)
from .errors import (
    CapExceededError,
    ContradictionError,
    InvalidInputError,
    MMWidthError,
    UnsupportedCaseError,
)
from .graphs import (
    Graph,
    SplitGraph,
    complete_graph,
    enumerate_small_graphs,
    neighborhood,
    validate_split,
)
from .kernels import BACKEND
from .reductions import (
    Bipartition,
    PartitionInstance,
    Tripartition,
    certify_end_to_end,
    lemma3_check,
    partition2_oracle,
    partition3_oracle,
    reduce_partition3_to_splitgraph,
    reduce_partition_to_partition3,
)
from .treerep import (
    CliqueTripartition,
    EdgeLoadProfile,
    TreeRepresentation,
    build_tree_representation,
    helly_intersection,
    lower_bound_from_clique,
    validate_tree_representation,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Bipartition",
    "BranchDecomposition",
    "CapExceededError",
    "ChainReport",
    "CliqueTripartition",
    "ContradictionError",
    "CutFunction",
    "EdgeLoadProfile",
    "Graph",
    "InvalidInputError",
    "MMWidthError",
    "PartitionInstance",
    "SplitGraph",
    "TernaryTree",
    "TreeRepresentation",
    "Tripartition",
    "UnsupportedCaseError",
    "WidthResult",
    "boundary_cut",
    "boundary_cut_function",
    "branchwidth_exact",
    "build_tree_representation",
    "certify_end_to_end",
    "check_inequality_chain",
    "check_symmetric_submodular",
    "complete_graph",
    "enumerate_decompositions",
    "enumerate_small_graphs",
    "exact_f_width",
    "f_width_of",
    "helly_intersection",
    "induced_partition",
    "lemma3_check",
    "lower_bound_from_clique",
    "mm_cut",
    "mm_cut_function",
    "mmw_exact",
    "neighborhood",
    "partition2_oracle",
    "partition3_oracle",
    "reduce_partition3_to_splitgraph",
    "reduce_partition_to_partition3",
    "treewidth_exact",
    "validate_split",
    "validate_tree_representation",
]
