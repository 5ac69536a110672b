"""Deciding one-way LOCC distinguishability of maximally entangled states.

Alice measures first, reports the outcome, and Bob finishes the job.  The
package decides whether a family of orthogonal maximally entangled states
(or of orthogonal product states, for a qubit sender) can be told apart
perfectly this way, and produces checkable certificates either way.
"""

from __future__ import annotations

from .algebra import (
    AlgebraDecomposition,
    AlgebraVerdict,
    OperatorSystem,
    SeparatingCertificate,
    algebra_closure,
    build_operator_system,
    check_permutation_states,
    check_simultaneous_schmidt,
    decide_by_algebra,
    decompose,
    find_separating_vector,
    has_separating_vector,
    is_separating,
    permutation_matrix,
)
from .core import (
    DEFAULT_TOL,
    Decision,
    OneWayProtocol,
    Povm,
    StateSet,
    WeightedStates,
    isometry_to_weighted_states,
    max_entangled,
    validate_povm,
    verify_witness_isometry,
    verify_witness_states,
)
from .errors import (
    BadDimension,
    BadLabel,
    BadParams,
    DecompositionFailed,
    DimensionMismatch,
    FileFormatError,
    InvalidCertificate,
    InvalidPovm,
    InvalidProtocol,
    LoccError,
    NonSquare,
    NonUnitary,
    NotAnAlgebra,
    NotCoisometry,
    NotOrthogonalStates,
    NotPermutation,
    NotSpanning,
    SamplingFailed,
    TooLarge,
    VertexCountMismatch,
    ZeroVector,
)
from .graphs import (
    CliqueCover,
    Graph,
    ProductStateSet,
    QubitSenderCertificate,
    QubitSenderVerdict,
    clique_cover_number,
    complement,
    decide_qubit_sender,
    extract_qubit_protocol,
    graph_from_vectors,
    is_clique_cover,
    is_subgraph,
    minimum_clique_cover,
    validate_qubit_certificate,
    verify_product_protocol,
)
from .oracles import (
    dense_pauli_oracle,
    haar_unitary,
    randomized_separating_oracle,
    sandwich_enumerate,
    simulate_one_way_protocol,
)
from .pauli import (
    PauliOp,
    PauliSet,
    commutes,
    conjugate_by,
    from_label,
    lattice_indistinguishable_set,
    logical_pauli_set,
    pauli_mul,
    subgroup_span_dim,
    to_dense,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraDecomposition",
    "AlgebraVerdict",
    "BadDimension",
    "BadLabel",
    "BadParams",
    "CliqueCover",
    "DEFAULT_TOL",
    "Decision",
    "DecompositionFailed",
    "DimensionMismatch",
    "FileFormatError",
    "Graph",
    "InvalidCertificate",
    "InvalidPovm",
    "InvalidProtocol",
    "LoccError",
    "NonSquare",
    "NonUnitary",
    "NotAnAlgebra",
    "NotCoisometry",
    "NotOrthogonalStates",
    "NotPermutation",
    "NotSpanning",
    "OneWayProtocol",
    "OperatorSystem",
    "PauliOp",
    "PauliSet",
    "Povm",
    "ProductStateSet",
    "QubitSenderCertificate",
    "QubitSenderVerdict",
    "SamplingFailed",
    "SeparatingCertificate",
    "StateSet",
    "TooLarge",
    "VertexCountMismatch",
    "WeightedStates",
    "ZeroVector",
    "algebra_closure",
    "build_operator_system",
    "check_permutation_states",
    "check_simultaneous_schmidt",
    "clique_cover_number",
    "commutes",
    "complement",
    "conjugate_by",
    "decide_by_algebra",
    "decide_qubit_sender",
    "decompose",
    "dense_pauli_oracle",
    "extract_qubit_protocol",
    "find_separating_vector",
    "from_label",
    "graph_from_vectors",
    "haar_unitary",
    "has_separating_vector",
    "is_clique_cover",
    "is_separating",
    "is_subgraph",
    "isometry_to_weighted_states",
    "lattice_indistinguishable_set",
    "logical_pauli_set",
    "max_entangled",
    "minimum_clique_cover",
    "pauli_mul",
    "permutation_matrix",
    "randomized_separating_oracle",
    "sandwich_enumerate",
    "simulate_one_way_protocol",
    "subgroup_span_dim",
    "to_dense",
    "validate_povm",
    "validate_qubit_certificate",
    "verify_product_protocol",
    "verify_witness_isometry",
    "verify_witness_states",
]
