"""Synthetic labeled datasets for checking the pipeline end to end"""

import numpy as np

from qsvm_py.common.random import make_rng
from qsvm_py.data.inner import Dataset
from qsvm_py.errors import InvalidParameterError

SynthKinds = ["blobs", "xor", "cosine"]


def _check_size(samples: int, features: int):
    if samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {samples}")
    if features < 1:
        raise InvalidParameterError(f"features must be >= 1, got {features}")


def _names(features: int):
    return tuple(f"x{j + 1}" for j in range(features))


def make_blobs(samples: int, features: int, margin: float, seed: int) -> Dataset:
    """Two classes separated by a slab of width `margin` along the first axis

    Labels alternate +1, -1. x_1 = y (margin / 2 + u) with u ~ U(0, 0.5), the
    other coordinates are U(-0.5, 0.5).
    """

    _check_size(samples, features)
    if margin <= 0:
        raise InvalidParameterError(f"margin must be > 0, got {margin}")

    rng = make_rng(seed)
    labels = np.where(np.arange(samples) % 2 == 0, 1.0, -1.0)
    x = rng.uniform(-0.5, 0.5, size=(samples, features))
    x[:, 0] = labels * (margin / 2 + rng.uniform(0.0, 0.5, size=samples))
    return Dataset(samples=x, labels=labels, feature_names=_names(features))


def make_xor() -> Dataset:
    """The four points (+-1, +-1), labeled +1 when both coordinates agree in sign"""

    x = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
    labels = np.array([1.0, -1.0, -1.0, 1.0])
    return Dataset(samples=x, labels=labels, feature_names=_names(2))


def make_cosine(samples: int, features: int, seed: int) -> Dataset:
    """x ~ U(-1, 1)^d labeled by sign(cos(pi * sum(x))), sign(0) = +1"""

    _check_size(samples, features)
    rng = make_rng(seed)
    x = rng.uniform(-1.0, 1.0, size=(samples, features))
    labels = np.where(np.cos(np.pi * x.sum(axis=1)) >= 0, 1.0, -1.0)
    return Dataset(samples=x, labels=labels, feature_names=_names(features))
