from .inner import PauliString, EncodingSpec
from .simulator import (
    zero_state,
    apply_pauli_string,
    apply_pauli_exponential,
    encode,
    encode_batch,
    overlap_sq,
    fidelity,
    kernel_value,
    hamiltonian_expectation_zero,
)
from .dense import (
    PAULI_MATRICES,
    pauli_matrix,
    hamiltonian_matrix,
    exact_evolution,
    density_matrix,
    kernel_via_density,
    trotter_error,
    trotter_error_bound,
    hamiltonian_expectation_dense,
)


__all__ = [
    "PauliString",
    "EncodingSpec",
    "zero_state",
    "apply_pauli_string",
    "apply_pauli_exponential",
    "encode",
    "encode_batch",
    "overlap_sq",
    "fidelity",
    "kernel_value",
    "hamiltonian_expectation_zero",
    "PAULI_MATRICES",
    "pauli_matrix",
    "hamiltonian_matrix",
    "exact_evolution",
    "density_matrix",
    "kernel_via_density",
    "trotter_error",
    "trotter_error_bound",
    "hamiltonian_expectation_dense",
]
