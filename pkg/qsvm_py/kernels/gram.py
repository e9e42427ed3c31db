from typing import Optional, Union, Dict, Any

import numpy as np
from scipy.spatial import distance

from qsvm_py.qsim import EncodingSpec, encode_batch, overlap_sq
from qsvm_py.kernels.inner import ClassicalKernelParams, KernelMatrix
from qsvm_py.common.concurrent import ordered_map
from qsvm_py.common.cache import GramCache
from qsvm_py.common.hashing import content_hash
from qsvm_py.errors import (
    DimensionMismatchError,
    EmptyInputError,
    NonFiniteError,
    KernelRangeError,
    UNIT_INTERVAL_TOL,
)
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

Kernel = Union[EncodingSpec, ClassicalKernelParams]


def _as_samples(samples, d: Optional[int] = None, name: str = "samples") -> np.ndarray:
    try:
        arr = np.asarray(samples, dtype=np.float64)
    except ValueError as err:
        raise DimensionMismatchError(f"{name} have inconsistent vector lengths", cause=err)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be a sequence of vectors, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise EmptyInputError(f"{name} are empty")
    if d is not None and arr.shape[1] != d:
        raise DimensionMismatchError(f"{name} have length {arr.shape[1]}, expected {d}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError(f"{name} contain non-finite values")
    return arr


def _clamp_unit(values: np.ndarray) -> np.ndarray:
    if np.any(values > 1.0 + UNIT_INTERVAL_TOL) or np.any(values < -UNIT_INTERVAL_TOL):
        raise KernelRangeError(f"kernel values outside [0, 1]: min {values.min()!r}, max {values.max()!r}")
    return np.clip(values, 0.0, 1.0)


def quantum_gram(samples, spec: EncodingSpec, max_workers: int = 1) -> KernelMatrix:
    """Symmetric quantum Gram matrix

    Every feature state is encoded once; each unordered pair costs one inner
    product. The diagonal is set to 1 without computation. Rows are assembled
    by the same call in serial and parallel mode, so the result is
    bit-identical for any `max_workers`.
    """

    spec.validate()
    arr = _as_samples(samples, spec.d)
    states = encode_batch(arr, spec)
    m = arr.shape[0]

    def upper_row(i: int) -> np.ndarray:
        return _clamp_unit(overlap_sq(states[i + 1 :], states[i]))

    rows = ordered_map(upper_row, list(range(m)), max_workers=max_workers)

    entries = np.eye(m, dtype=np.float64)
    for i, row in enumerate(rows):
        entries[i, i + 1 :] = row
        entries[i + 1 :, i] = row

    logger.debug("`quantum_gram`: M: %s, n: %s, d: %s, t: %s, s: %s", m, spec.n, spec.d, spec.t, spec.s)
    return KernelMatrix(entries=entries, kind=spec.descriptor())


def quantum_cross_gram(train, test, spec: EncodingSpec, max_workers: int = 1) -> np.ndarray:
    """L x M matrix with entry [l, i] = kernel_value(test[l], train[i])"""

    spec.validate()
    train_arr = _as_samples(train, spec.d, "train samples")
    test_arr = _as_samples(test, spec.d, "test samples")
    train_states = encode_batch(train_arr, spec)
    test_states = encode_batch(test_arr, spec)

    def row(l: int) -> np.ndarray:
        return _clamp_unit(overlap_sq(train_states, test_states[l]))

    rows = ordered_map(row, list(range(test_arr.shape[0])), max_workers=max_workers)
    return np.vstack(rows)


def classical_gram(samples_a, samples_b, params: ClassicalKernelParams) -> np.ndarray:
    """Classical kernel matrix between two sample sets"""

    params.validate()
    a = _as_samples(samples_a, name="samples_a")
    b = _as_samples(samples_b, a.shape[1], "samples_b")
    d = a.shape[1]

    if params.family == "linear":
        return a @ b.T

    gamma = params.resolved_gamma(d)
    if params.family == "rbf":
        # Identical rows give exactly zero distance, so the diagonal is exactly 1
        sq = distance.cdist(a, b, "sqeuclidean")
        return np.exp(-gamma * sq)

    return (gamma * (a @ b.T) + params.coef0) ** int(params.degree)


def kernel_descriptor(kernel: Kernel) -> Dict[str, Any]:
    return kernel.descriptor()


def gram_matrix(
    samples,
    kernel: Kernel,
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
) -> KernelMatrix:
    """Gram matrix of any supported kernel, looked up in `cache` by content hash"""

    arr = _as_samples(samples)
    descriptor = kernel_descriptor(kernel)
    key = None
    if cache is not None:
        key = content_hash(arr, descriptor)
        hit = cache.get(key)
        if hit is not None:
            logger.debug("`gram_matrix`: cache hit: %s", key)
            return KernelMatrix(entries=hit, kind=descriptor)

    if isinstance(kernel, EncodingSpec):
        km = quantum_gram(arr, kernel, max_workers=max_workers)
    else:
        entries = classical_gram(arr, arr, kernel)
        # Exact symmetry regardless of BLAS blocking
        entries = np.triu(entries) + np.triu(entries, 1).T
        km = KernelMatrix(entries=entries, kind=descriptor)

    if cache is not None and key is not None:
        logger.debug("`gram_matrix`: cache store: %s", key)
        cache.put(key, km.entries, descriptor)
    return km


def cross_gram_matrix(train, test, kernel: Kernel, max_workers: int = 1) -> np.ndarray:
    """L x M kernel rows between test samples and training samples"""

    if isinstance(kernel, EncodingSpec):
        return quantum_cross_gram(train, test, kernel, max_workers=max_workers)
    return classical_gram(test, train, kernel)


def min_eigenvalue(entries: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(np.asarray(entries, dtype=np.float64))[0])
