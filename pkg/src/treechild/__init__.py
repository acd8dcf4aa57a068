"""Tree-child network hybridization via tree-child sequences.

Combine rooted tree-child phylogenetic networks on a common taxon set into a
tree-child network with minimum reticulation number, or certify that no such
network exists.  The library covers the network data type and its pair
reductions, tree-child sequences, the bounded branching solver, brute-force
oracles with a seeded generator, and extended-Newick I/O.
"""

from .network import (
    Diagnostic,
    Network,
    NodeKind,
    PairKind,
    ReduciblePair,
    Taxon,
    add_pair,
    canonical_form,
    is_binary,
    is_stack_free,
    is_tree_child,
    isomorphic,
    node_kind,
    reduce_pair,
    reducible_pairs,
    reticulation_number,
    single_leaf,
    validate,
)
from .sequence import (
    Pair,
    TCSequence,
    construct_network,
    forbidden,
    format_pairs,
    is_extendable,
    is_tcs,
    parse_pairs,
    reduce_by_sequence,
    reduces_set,
    weight,
)
from .solver import (
    BudgetExceededError,
    IncompatibilityWitness,
    Instance,
    SearchStats,
    SolveResult,
    quick_incompatibility,
    solve,
    tree_child_network,
    tree_child_sequence,
    trivial_pairs,
)
from .oracle import (
    GeneratorConfig,
    OracleLimitError,
    OracleReport,
    brute_force_min_tcs,
    displays_bruteforce,
    generate_instance,
    random_tcs,
)
from .enewick import (
    ENewickDocument,
    ENewickError,
    parse_document,
    parse_enewick,
    write_enewick,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "Diagnostic",
    "ENewickDocument",
    "ENewickError",
    "GeneratorConfig",
    "IncompatibilityWitness",
    "Instance",
    "Network",
    "NodeKind",
    "OracleLimitError",
    "OracleReport",
    "Pair",
    "PairKind",
    "ReduciblePair",
    "SearchStats",
    "SolveResult",
    "TCSequence",
    "Taxon",
    "add_pair",
    "brute_force_min_tcs",
    "canonical_form",
    "construct_network",
    "displays_bruteforce",
    "forbidden",
    "format_pairs",
    "generate_instance",
    "is_binary",
    "is_extendable",
    "is_stack_free",
    "is_tcs",
    "is_tree_child",
    "isomorphic",
    "node_kind",
    "parse_document",
    "parse_enewick",
    "parse_pairs",
    "quick_incompatibility",
    "random_tcs",
    "reduce_by_sequence",
    "reduce_pair",
    "reduces_set",
    "reducible_pairs",
    "reticulation_number",
    "single_leaf",
    "solve",
    "tree_child_network",
    "tree_child_sequence",
    "trivial_pairs",
    "validate",
    "weight",
    "write_enewick",
]
