"""Connected maximum cut toolkit.

Find a vertex set S inducing a connected subgraph that maximizes the
weight of edges leaving S. Provides approximation algorithms for 0/1 and
general weights, an exact dynamic program over tree decompositions, a
planar (1-eps) approximation pipeline, a high-connectivity sampling
heuristic, and a planar-SAT hardness gadget generator, all cross-checked
against brute-force oracles at small scale.
"""

from .errors import (
    ConncutError,
    CycleInputError,
    InfeasibleAssignmentError,
    InvalidInputError,
    InvariantViolationError,
    SizeGuardError,
)
from .graph import (
    ContractionMap,
    Graph,
    Solution,
    connected_components,
    contract_vertex_sets,
    cut_weight,
    induced_subgraph,
    is_connected_induced,
)

__version__ = "0.1.0"

__all__ = [
    "ConncutError",
    "ContractionMap",
    "CycleInputError",
    "Graph",
    "InfeasibleAssignmentError",
    "InvalidInputError",
    "InvariantViolationError",
    "SizeGuardError",
    "Solution",
    "connected_components",
    "contract_vertex_sets",
    "cut_weight",
    "induced_subgraph",
    "is_connected_induced",
    "__version__",
]
