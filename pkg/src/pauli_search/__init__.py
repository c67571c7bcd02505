"""Best-first recovery of the largest Pauli coefficients of a quantum state from Bell samples."""

from .bell import BellPairOutcome, SampleSet, read_samples, write_samples
from .estimator import (
    NodeEstimate,
    SignVector,
    child_sign_vector,
    estimate,
    required_samples,
    root_sign_vector,
)
from .oracle import bell_distribution_dense, delta_paths_enumerated, node_value_exact
from .pauli_core import DenseState, PauliAxis, PauliString, Prefix, coefficient, pauli_matrix, purity
from .samplers import (
    random_stabilizer,
    sample_dense,
    sample_pauli_singleton,
    sample_stabilizer,
    swap_test_estimate,
)
from .search import (
    ExactSource,
    SampledSource,
    SearchResult,
    SearchStats,
    find_above_threshold,
    find_top_t,
    quality_score,
)
from .tableau import StabilizerTableau, enumerate_group

__all__ = [
    "BellPairOutcome",
    "DenseState",
    "ExactSource",
    "NodeEstimate",
    "PauliAxis",
    "PauliString",
    "Prefix",
    "SampleSet",
    "SampledSource",
    "SearchResult",
    "SearchStats",
    "SignVector",
    "StabilizerTableau",
    "bell_distribution_dense",
    "child_sign_vector",
    "coefficient",
    "delta_paths_enumerated",
    "enumerate_group",
    "estimate",
    "find_above_threshold",
    "find_top_t",
    "node_value_exact",
    "pauli_matrix",
    "purity",
    "quality_score",
    "random_stabilizer",
    "read_samples",
    "required_samples",
    "root_sign_vector",
    "sample_dense",
    "sample_pauli_singleton",
    "sample_stabilizer",
    "swap_test_estimate",
    "write_samples",
]
