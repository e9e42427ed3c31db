"""Noiseless statevector simulation of Pauli-exponential encodings

Pauli strings act on amplitudes through index permutations and signs, so no
2^n x 2^n matrix is ever built here. Dense reference computations live in
`qsvm_py.qsim.dense`.
"""

from typing import Tuple, Sequence
from functools import lru_cache

import numpy as np

from qsvm_py.qsim.inner import PauliString, EncodingSpec
from qsvm_py.errors import DimensionMismatchError, NonFiniteError, assert_unit_interval

# Global phase i^k
_I_POWERS = (1.0 + 0.0j, 0.0 + 1.0j, -1.0 + 0.0j, 0.0 - 1.0j)


def zero_state(n: int) -> np.ndarray:
    """|0^n>"""

    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


@lru_cache(maxsize=4096)
def _pauli_action(symbols: str) -> Tuple[np.ndarray, np.ndarray]:
    """(source indices, phases) with (P psi)[j] = phases[j] * psi[source[j]]"""

    p = PauliString(symbols)
    dim = 1 << p.n
    idx = np.arange(dim, dtype=np.int64)
    src = idx ^ p.x_mask

    parity = np.zeros(dim, dtype=np.int64)
    z_mask = p.z_mask
    for bit in range(p.n):
        if z_mask >> bit & 1:
            parity ^= (src >> bit) & 1

    phases = np.where(parity == 1, -1.0, 1.0).astype(np.complex128) * _I_POWERS[p.y_count % 4]
    src.setflags(write=False)
    phases.setflags(write=False)
    return src, phases


def _check_dim(dim: int, p: PauliString):
    if dim != 1 << p.n:
        raise DimensionMismatchError(f"state of dimension {dim} does not match {p.n}-qubit Pauli string {p.symbols}")


def apply_pauli_string(state: np.ndarray, p: PauliString) -> np.ndarray:
    """P|psi>"""

    state = np.asarray(state, dtype=np.complex128)
    _check_dim(state.shape[-1], p)
    src, phases = _pauli_action(p.symbols)
    return state[..., src] * phases


def apply_pauli_exponential(state: np.ndarray, p: PauliString, theta) -> np.ndarray:
    """exp(-i theta P)|psi> = cos(theta)|psi> - i sin(theta) P|psi>

    `state` may be a batch of shape (M, 2^n) with `theta` of shape (M,).
    """

    theta = np.asarray(theta, dtype=np.float64)
    if not np.all(np.isfinite(theta)):
        raise NonFiniteError(f"non-finite rotation angle {theta!r}")

    state = np.asarray(state, dtype=np.complex128)
    _check_dim(state.shape[-1], p)
    src, phases = _pauli_action(p.symbols)

    if state.ndim == 2:
        theta = theta.reshape(-1, 1)
    return np.cos(theta) * state - 1j * np.sin(theta) * (state[..., src] * phases)


def _check_samples(samples: np.ndarray, spec: EncodingSpec) -> np.ndarray:
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[1] != spec.d:
        raise DimensionMismatchError(f"expected vectors of length {spec.d}, got array of shape {samples.shape}")
    if not np.all(np.isfinite(samples)):
        raise NonFiniteError("input vectors contain non-finite components")
    return samples


def encode_batch(samples: np.ndarray, spec: EncodingSpec) -> np.ndarray:
    """Feature states U(x)|0^n> of every row of `samples`, shape (M, 2^n)

    Within each of the s repetitions the factors are applied in ascending j,
    j = 1 acting first on the state.
    """

    spec.validate()
    samples = _check_samples(samples, spec)

    states = np.zeros((samples.shape[0], 1 << spec.n), dtype=np.complex128)
    states[:, 0] = 1.0
    if samples.shape[0] == 0:
        return states

    angles = samples * (spec.t / spec.s)
    for _ in range(spec.s):
        for j, p in enumerate(spec.paulis):
            states = apply_pauli_exponential(states, p, angles[:, j])
    return states


def encode(x: Sequence[float], spec: EncodingSpec) -> np.ndarray:
    """U(x)|0^n>"""

    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got array of shape {x.shape}")
    return encode_batch(x.reshape(1, -1), spec)[0]


def overlap_sq(a: np.ndarray, b: np.ndarray):
    """|<a|b>|^2 for vectors, or row-wise for a batch `a` against vector `b`"""

    amp = np.asarray(a) @ np.conj(b)
    return amp.real * amp.real + amp.imag * amp.imag


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    return float(overlap_sq(a, b))


@assert_unit_interval
def kernel_value(x: Sequence[float], x2: Sequence[float], spec: EncodingSpec) -> float:
    """|<0^n|U^dagger(x) U(x2)|0^n>|^2"""

    x = np.asarray(x, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    if x.shape != x2.shape:
        raise DimensionMismatchError(f"vectors of shape {x.shape} and {x2.shape}")

    # Canonical argument order makes the value exactly symmetric
    if tuple(x2.tolist()) < tuple(x.tolist()):
        x, x2 = x2, x

    states = encode_batch(np.stack([x, x2]), spec)
    return fidelity(states[0], states[1])


def hamiltonian_expectation_zero(x: Sequence[float], spec: EncodingSpec) -> float:
    """<0^n|H(x)|0^n> = sum_j x_j [P_j has only I and Z]"""

    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != spec.d:
        raise DimensionMismatchError(f"expected a vector of length {spec.d}, got shape {x.shape}")

    mask = np.array([p.is_diagonal for p in spec.paulis], dtype=np.float64)
    return float(np.dot(x, mask))
