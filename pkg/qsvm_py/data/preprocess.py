import numpy as np

from qsvm_py.common.random import make_rng
from qsvm_py.data.inner import Dataset, StandardizationParams
from qsvm_py.errors import DimensionMismatchError, EmptyInputError, SingleClassError
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)


def _indices(on, size: int) -> np.ndarray:
    indices = np.asarray(on, dtype=np.int64).reshape(-1)
    if indices.size and (indices.min() < 0 or indices.max() >= size):
        raise DimensionMismatchError(f"indices out of range for a dataset of {size} samples")
    return indices


def fit_standardizer(ds: Dataset, on) -> StandardizationParams:
    """Column means and population standard deviations over the rows `on`"""

    indices = _indices(on, ds.size)
    if indices.size == 0:
        raise EmptyInputError("cannot fit standardization on an empty index set")

    rows = ds.samples[indices]
    return StandardizationParams(means=rows.mean(axis=0), stds=rows.std(axis=0))


def standardize(samples: np.ndarray, params: StandardizationParams) -> np.ndarray:
    """(x - mean) / std per column, columns with std = 0 map to 0"""

    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[1] != params.d:
        raise DimensionMismatchError(f"expected vectors of length {params.d}, got array of shape {samples.shape}")

    constant = params.stds == 0
    scale = np.where(constant, 1.0, params.stds)
    out = (samples - params.means) / scale
    out[:, constant] = 0.0
    return out


def apply_standardizer(ds: Dataset, params: StandardizationParams) -> Dataset:
    return ds._replace(samples=standardize(ds.samples, params))


def undersample(ds: Dataset, on, seed: int) -> np.ndarray:
    """Drop majority-class members of `on` uniformly at random until both classes are equal

    The minority class is untouched and the kept indices stay in their order in `on`.
    """

    indices = _indices(on, ds.size)
    labels = ds.labels[indices]
    pos = np.flatnonzero(labels > 0)
    neg = np.flatnonzero(labels < 0)
    if pos.size == 0 or neg.size == 0:
        raise SingleClassError("undersampling needs both classes")

    if pos.size == neg.size:
        return indices

    major, minor = (pos, neg) if pos.size > neg.size else (neg, pos)
    rng = make_rng(seed)
    kept = rng.choice(major, size=minor.size, replace=False)

    keep = np.zeros(indices.size, dtype=bool)
    keep[minor] = True
    keep[kept] = True
    logger.debug("`undersample`: %s + %s -> %s + %s", pos.size, neg.size, minor.size, minor.size)
    return indices[keep]
