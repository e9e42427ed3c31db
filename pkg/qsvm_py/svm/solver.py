"""Soft-margin dual solver on a precomputed kernel matrix

    min_a  1/2 sum_ij a_i a_j y_i y_j K_ij - sum_i a_i
    s.t.   0 <= a_i <= C,  sum_i a_i y_i = 0

Pairwise coordinate descent: each step picks the maximal violating pair
(i from the "up" set, j from the "low" set, lowest index on ties) and
solves the two-variable subproblem in closed form.
"""

from typing import Optional, Tuple, Union

import math

import numpy as np

from qsvm_py.common.constant import SUPPORT_THRESHOLD
from qsvm_py.kernels import KernelMatrix, min_eigenvalue
from qsvm_py.svm.inner import SvmModel
from qsvm_py.errors import (
    DimensionMismatchError,
    NonFiniteError,
    InvalidParameterError,
    EmptyInputError,
    SingleClassError,
    DegenerateModelError,
    ConvergenceError,
)
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 10**7

# Most negative eigenvalue tolerated without a warning
PSD_TOLERANCE = 1e-6

# Pair curvature at or below this is treated as nonpositive
CURVATURE_TAU = 1e-12

TKernel = Union[KernelMatrix, np.ndarray]


def _entries(kernel: TKernel) -> np.ndarray:
    if isinstance(kernel, KernelMatrix):
        return np.asarray(kernel.entries, dtype=np.float64)
    return np.asarray(kernel, dtype=np.float64)


def check_problem(kernel: TKernel, labels, C: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    K = _entries(kernel)
    y = np.asarray(labels, dtype=np.float64)

    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise DimensionMismatchError(f"kernel matrix must be square, got shape {K.shape}")
    if K.shape[0] == 0:
        raise EmptyInputError("kernel matrix is empty")
    if y.ndim != 1 or y.shape[0] != K.shape[0]:
        raise DimensionMismatchError(f"{y.shape[0] if y.ndim else 0} labels for a {K.shape[0]}-sample kernel")
    if not np.all(np.isfinite(K)):
        raise NonFiniteError("kernel matrix contains non-finite values")
    if not np.all(np.abs(y) == 1.0):
        raise InvalidParameterError("labels must be +1 or -1")
    if np.max(np.abs(K - K.T)) > 1e-10:
        raise InvalidParameterError("kernel matrix is not symmetric")
    if C is not None and (not math.isfinite(C) or C <= 0):
        raise InvalidParameterError(f"C must be a positive real, got {C}")
    return K, y


def _violating_pair(alphas: np.ndarray, y: np.ndarray, grad: np.ndarray, C: float) -> Tuple[int, int, float]:
    """(i, j, m - M) for the maximal violating pair, j = -1 when a set is empty"""

    pos = y > 0
    up = (pos & (alphas < C)) | (~pos & (alphas > 0))
    low = (pos & (alphas > 0)) | (~pos & (alphas < C))
    if not up.any() or not low.any():
        return -1, -1, 0.0

    score = -y * grad
    cand_up = np.where(up, score, -np.inf)
    cand_low = np.where(low, score, np.inf)
    # argmax / argmin return the lowest index among ties
    i = int(np.argmax(cand_up))
    j = int(np.argmin(cand_low))
    return i, j, float(cand_up[i] - cand_low[j])


def kkt_violation(alphas, kernel: TKernel, labels, C: float) -> float:
    """Maximal KKT violation m(a) - M(a), 0 at an exact optimum"""

    K, y = check_problem(kernel, labels, C)
    alphas = np.asarray(alphas, dtype=np.float64)
    grad = y * (K @ (alphas * y)) - 1.0
    return max(_violating_pair(alphas, y, grad, C)[2], 0.0)


def dual_objective(alphas, kernel: TKernel, labels) -> float:
    """1/2 a^T Q a - e^T a with Q = y y^T * K"""

    K, y = check_problem(kernel, labels)
    ay = np.asarray(alphas, dtype=np.float64) * y
    return float(0.5 * ay @ K @ ay - np.sum(alphas))


def compute_bias(alphas, kernel: TKernel, labels, C: float) -> float:
    """Bias from the KKT conditions

    Averages y_i - sum_j a_j y_j K_ij over free support vectors. Without free
    support vectors, returns the midpoint of the interval that the bounded
    ones allow.
    """

    K, y = check_problem(kernel, labels, C)
    alphas = np.asarray(alphas, dtype=np.float64)
    if not np.any(alphas > 0):
        raise DegenerateModelError("no support vectors, the bias is undetermined")

    residual = y - K @ (alphas * y)

    eps = 1e-8 * min(1.0, C)
    free = (alphas > eps) & (alphas < C - eps)
    if free.any():
        return float(np.mean(residual[free]))

    at_upper = alphas >= C - eps
    at_lower = ~at_upper
    pos = y > 0
    lower_bounds = residual[(at_lower & pos) | (at_upper & ~pos)]
    upper_bounds = residual[(at_lower & ~pos) | (at_upper & pos)]

    lb = float(np.max(lower_bounds)) if lower_bounds.size else -math.inf
    ub = float(np.min(upper_bounds)) if upper_bounds.size else math.inf
    logger.debug("`compute_bias`: no free support vectors, interval: [%s, %s]", lb, ub)

    if math.isinf(lb) and math.isinf(ub):
        return 0.0
    if math.isinf(lb):
        return ub
    if math.isinf(ub):
        return lb
    return (lb + ub) / 2


def solve_dual(
    kernel: TKernel,
    labels,
    C: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    check_psd: bool = True,
) -> SvmModel:
    """Train a soft-margin SVM on a precomputed kernel

    Stops when the maximal KKT violation is at most `tol`. Raises
    `ConvergenceError` after `max_iter` pair updates.
    """

    K, y = check_problem(kernel, labels, C)
    if np.all(y > 0) or np.all(y < 0):
        raise SingleClassError("labels contain a single class, the equality constraint forces all alphas to 0")
    if tol <= 0:
        raise InvalidParameterError(f"tol must be > 0, got {tol}")

    if check_psd:
        min_eig = min_eigenvalue(K)
        if min_eig < -PSD_TOLERANCE:
            logger.warning("`solve_dual`: kernel is not PSD, min eigenvalue: %s", min_eig)

    m = K.shape[0]
    Q = (y[:, None] * y[None, :]) * K
    alphas = np.zeros(m, dtype=np.float64)
    grad = -np.ones(m, dtype=np.float64)
    warned = False

    iterations = 0
    while True:
        i, j, gap = _violating_pair(alphas, y, grad, C)
        if j < 0 or gap <= tol:
            break
        if iterations >= max_iter:
            logger.warning("`solve_dual`: stopped after %s iterations, violation: %s", iterations, gap)
            raise ConvergenceError(f"no convergence after {max_iter} pair updates, KKT violation {gap}")
        iterations += 1

        # Largest step keeping both alphas in the box
        room_i = C - alphas[i] if y[i] > 0 else alphas[i]
        room_j = alphas[j] if y[j] > 0 else C - alphas[j]
        room = min(room_i, room_j)

        curvature = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if curvature > CURVATURE_TAU:
            step = min(gap / curvature, room)
        else:
            if not warned:
                logger.warning("`solve_dual`: nonpositive curvature %s on pair (%s, %s)", curvature, i, j)
                warned = True
            step = room

        alphas[i] += y[i] * step
        alphas[j] -= y[j] * step
        if step == room_i:
            alphas[i] = C if y[i] > 0 else 0.0
        if step == room_j:
            alphas[j] = 0.0 if y[j] > 0 else C

        grad += step * (y[i] * Q[:, i] - y[j] * Q[:, j])

    # Clip rounding residue at the box edges
    np.clip(alphas, 0.0, C, out=alphas)

    bias = compute_bias(alphas, K, y, C)
    support = np.flatnonzero(alphas > SUPPORT_THRESHOLD)
    logger.debug(
        "`solve_dual`: M: %s, C: %s, iterations: %s, support vectors: %s, bias: %s", m, C, iterations, support.size, bias
    )

    kind = kernel.kind if isinstance(kernel, KernelMatrix) else None
    return SvmModel(
        alphas=alphas,
        bias=bias,
        C=float(C),
        labels=y.copy(),
        support_indices=support,
        kernel=kind,
        iterations=iterations,
    )
