"""Generalization bound of a trained quantum-kernel model

    eps <= 8 (|a|^2 + kappa t^2) / sqrt(M) * (1 + 1/2 sqrt(log(1/delta) / 2))

with kappa = sum_ij a_i a_j (h_i - h_j)^2 and h_i = <0^n|H(x_i)|0^n>.
"""

from typing import Optional, Sequence, List

import math

import numpy as np

from qsvm_py.qsim import EncodingSpec, hamiltonian_expectation_zero
from qsvm_py.experiment.inner import BoundReport
from qsvm_py.errors import InvalidParameterError, DimensionMismatchError
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)


def confidence_multiplier(delta: float) -> float:
    if not 0 < delta <= 1:
        raise InvalidParameterError(f"delta must be in (0, 1], got {delta}")
    return 1.0 + 0.5 * math.sqrt(math.log(1.0 / delta) / 2.0)


def kappa(alphas, samples, spec: EncodingSpec) -> float:
    """sum_ij a_i a_j (h_i - h_j)^2, the full double sum"""

    alphas = np.asarray(alphas, dtype=np.float64)
    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[0] != alphas.shape[0]:
        raise DimensionMismatchError(f"{alphas.shape[0]} alphas for samples of shape {samples.shape}")

    h = np.array([hamiltonian_expectation_zero(x, spec) for x in samples], dtype=np.float64)
    diff_sq = (h[:, None] - h[None, :]) ** 2
    return float(alphas @ diff_sq @ alphas)


def generalization_bound(
    alphas,
    samples,
    spec: EncodingSpec,
    delta: float,
    M: Optional[int] = None,
) -> BoundReport:
    """Bound components for solved dual coefficients; M defaults to len(alphas)"""

    multiplier = confidence_multiplier(delta)
    alphas = np.asarray(alphas, dtype=np.float64)
    if M is None:
        M = int(alphas.shape[0])
    if M < 1:
        raise InvalidParameterError(f"M must be >= 1, got {M}")

    alpha_norm_sq = float(alphas @ alphas)
    k = kappa(alphas, samples, spec)
    if k < 0:
        logger.warning("`generalization_bound`: kappa is negative: %s", k)

    value = 8.0 * (alpha_norm_sq + k * spec.t**2) / math.sqrt(M) * multiplier
    return BoundReport(
        alpha_norm_sq=alpha_norm_sq,
        kappa=k,
        t=float(spec.t),
        M=int(M),
        delta=float(delta),
        multiplier=multiplier,
        value=value,
    )


def bound_curve(
    alphas,
    samples,
    spec: EncodingSpec,
    delta: float,
    t_values: Sequence[float],
    M: Optional[int] = None,
) -> List[BoundReport]:
    """The bound at every t with alphas and samples held fixed"""

    return [generalization_bound(alphas, samples, spec.with_time(t), delta, M) for t in t_values]
