"""Dense 2^n x 2^n reference computations (n <= DENSE_QUBIT_LIMIT)"""

from typing import Sequence
from functools import reduce

import numpy as np
from scipy import linalg

from qsvm_py.common.constant import DENSE_QUBIT_LIMIT
from qsvm_py.qsim.inner import PauliString, EncodingSpec
from qsvm_py.qsim.simulator import encode, zero_state
from qsvm_py.errors import DenseLimitError, DimensionMismatchError, NonFiniteError, assert_unit_interval

PAULI_MATRICES = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _check_dense(n: int):
    if n > DENSE_QUBIT_LIMIT:
        raise DenseLimitError(f"{n} qubits exceeds the dense limit of {DENSE_QUBIT_LIMIT}")


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Kronecker product of the symbols of `p`, left to right"""

    _check_dense(p.n)
    return reduce(np.kron, [PAULI_MATRICES[c] for c in p.symbols])


def hamiltonian_matrix(x: Sequence[float], spec: EncodingSpec) -> np.ndarray:
    """H(x) = sum_j x_j P_j"""

    spec.validate()
    _check_dense(spec.n)

    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != spec.d:
        raise DimensionMismatchError(f"expected a vector of length {spec.d}, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("input vector contains non-finite components")

    dim = 1 << spec.n
    h = np.zeros((dim, dim), dtype=np.complex128)
    for xj, p in zip(x, spec.paulis):
        h += xj * pauli_matrix(p)
    return h


def exact_evolution(x: Sequence[float], spec: EncodingSpec) -> np.ndarray:
    """exp(-i H(x) t)|0^n> via eigendecomposition of the Hermitian H(x)"""

    h = hamiltonian_matrix(x, spec)
    w, v = linalg.eigh(h)
    # V^dagger |0^n> is the conjugated first row of V
    return v @ (np.exp(-1j * w * spec.t) * np.conj(v[0, :]))


def density_matrix(state: np.ndarray) -> np.ndarray:
    """rho = |psi><psi|"""

    state = np.asarray(state, dtype=np.complex128)
    _check_dense(int(state.shape[0]).bit_length() - 1)
    return np.outer(state, np.conj(state))


@assert_unit_interval
def kernel_via_density(x: Sequence[float], x2: Sequence[float], spec: EncodingSpec) -> float:
    """Tr[rho(x) rho(x2)] from materialized density matrices"""

    _check_dense(spec.n)
    rho = density_matrix(encode(x, spec))
    rho2 = density_matrix(encode(x2, spec))
    return float(np.real(np.sum(rho * rho2.T)))


def trotter_error(x: Sequence[float], spec: EncodingSpec) -> float:
    """Euclidean distance between the Trotterized and the exact feature state"""

    return float(np.linalg.norm(encode(x, spec) - exact_evolution(x, spec)))


def hamiltonian_expectation_dense(x: Sequence[float], spec: EncodingSpec) -> float:
    """<0^n|H(x)|0^n> read off the dense matrix"""

    h = hamiltonian_matrix(x, spec)
    psi = zero_state(spec.n)
    return float(np.real(np.conj(psi) @ h @ psi))


def trotter_error_bound(x: Sequence[float], spec: EncodingSpec) -> float:
    """First-order commutator bound on `trotter_error`

    (t^2 / 2s) * sum_{i<j} |x_i x_j| * ||[P_i, P_j]||, where the commutator norm
    is 2 for anticommuting strings and 0 otherwise. Needs no dense matrices.
    """

    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.d,):
        raise DimensionMismatchError(f"sample has shape {x.shape}, the encoding expects ({spec.d},)")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError("sample contains NaN or infinity")

    total = 0.0
    for i in range(spec.d):
        for j in range(i + 1, spec.d):
            if not spec.paulis[i].commutes_with(spec.paulis[j]):
                total += 2.0 * abs(x[i] * x[j])
    return float(spec.t**2 / (2 * spec.s) * total)
