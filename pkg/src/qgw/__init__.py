"""Quantum graphs on M_n.

Operator-space representation, the ABC families invariant under diagonal
unitaries/orthogonals, strange graphs, and witness-checked bounds on
connected components, chromatic, independence and clique numbers.
"""

from .abcgraphs import (
    ABCParams,
    HypParams,
    RandomProfile,
    abc_adjacency,
    abc_projector,
    build,
    canonical,
    classical_embedding,
    decompose,
    from_strange_graph,
    hyp_build,
    hyp_enumerate,
    random_abc,
    to_strange_graph,
    validate,
)
from .analysis import bounds_table, analyze_graph
from .classical import ClassicalGraph, StrangeGraph
from .qgraph import QuantumGraph, edge_count
from .superop import SuperOp, realign, schur_product
from .witness import (
    CliqueWitness,
    ColouringWitness,
    ComponentWitness,
    IndependenceWitness,
    check_clique,
    check_colouring,
    check_components,
    check_independent_set,
)

__version__ = "0.1.0"

__all__ = [
    "ABCParams", "HypParams", "RandomProfile", "abc_adjacency", "abc_projector", "build", "canonical",
    "classical_embedding", "decompose", "from_strange_graph", "hyp_build", "hyp_enumerate", "random_abc",
    "to_strange_graph", "validate", "bounds_table", "analyze_graph", "ClassicalGraph", "StrangeGraph",
    "QuantumGraph", "edge_count", "SuperOp", "realign", "schur_product", "CliqueWitness",
    "ColouringWitness", "ComponentWitness", "IndependenceWitness", "check_clique", "check_colouring",
    "check_components", "check_independent_set", "__version__",
]
