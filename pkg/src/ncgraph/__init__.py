"""Non-commutative confusability graphs of quantum channels.

Builds operator spaces from channels and classical graphs, computes the
quantum Lovasz number by semidefinite programming (primal and dual forms),
classical Lovasz theta and independence numbers, and certified bounds on
zero-error message counts.
"""

from .errors import (
    DimensionOverflowError,
    GapTooLargeError,
    InputFormatError,
    NcgraphError,
    NotHermitianError,
    NotIsometryError,
    NotNcGraphError,
    NotProjectorError,
    NotTracePreservingError,
    ShapeMismatchError,
    SolverError,
)
from .linalg import (
    EigDecomposition,
    eigh,
    gram_schmidt_hs,
    hs_inner,
    hs_norm,
    kron,
    max_entangled,
    operator_norm,
    partial_trace,
    real_embed,
)
from .spaces import (
    OperatorSpace,
    complete_union,
    direct_sum,
    distance_graph,
    full_space,
    hermitian_basis,
    identity_space,
    induced_subgraph,
    is_nc_graph,
    orth_complement,
    random_nc_graph,
    space_equal,
    space_leq,
    span,
    tensor,
)
from .graphs import (
    Graph,
    alpha_brute,
    complement_graph,
    complete,
    cycle,
    empty,
    erdos_renyi,
    from_edges,
    path,
    strong_product,
    to_operator_space,
)
from .channels import (
    ClassicalChannel,
    QuantumChannel,
    apply,
    bipartite_space,
    channel_from_graph,
    complementary,
    compose,
    confusability,
    from_classical,
    heisenberg,
    make_channel,
    tensor_channel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
