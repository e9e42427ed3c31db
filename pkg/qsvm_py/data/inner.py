from typing import Optional, Dict, Tuple, NamedTuple, Iterator

import numpy as np

from qsvm_py.errors import DimensionMismatchError, NonFiniteError, InvalidParameterError

DEFAULT_LABEL_MAP = {"1": 1, "0": -1}


class DatasetSchema(NamedTuple):
    """
    How a CSV file maps onto a Dataset

    label_column: str
    feature_columns: Optional[Tuple[str, ...]] = None  # None: every column except label and id
    id_column: Optional[str] = None
    label_map: Optional[Dict[str, int]] = None  # cell text -> +1 / -1, None: DEFAULT_LABEL_MAP
    """

    label_column: str = "label"
    feature_columns: Optional[Tuple[str, ...]] = None
    id_column: Optional[str] = None
    label_map: Optional[Dict[str, int]] = None

    def labels(self) -> Dict[str, int]:
        label_map = dict(DEFAULT_LABEL_MAP if self.label_map is None else self.label_map)
        for key, value in label_map.items():
            if value not in (1, -1):
                raise InvalidParameterError(f"label {key!r} must map to 1 or -1, got {value!r}")
        return {str(k): int(v) for k, v in label_map.items()}

    def label_names(self) -> Dict[int, str]:
        """+1 / -1 -> the first cell text mapping to it"""

        names: Dict[int, str] = {}
        for key, value in self.labels().items():
            names.setdefault(value, key)
        return names


class Dataset(NamedTuple):
    """M labeled descriptor vectors"""

    samples: np.ndarray  # (M, d)
    labels: np.ndarray  # (M,), +1 / -1
    ids: Optional[Tuple[str, ...]] = None
    feature_names: Optional[Tuple[str, ...]] = None

    @property
    def size(self) -> int:
        return int(self.samples.shape[0])

    @property
    def d(self) -> int:
        return int(self.samples.shape[1])

    def validate(self) -> "Dataset":
        if self.samples.ndim != 2:
            raise DimensionMismatchError(f"samples must be a matrix, got shape {self.samples.shape}")
        if self.labels.shape != (self.samples.shape[0],):
            raise DimensionMismatchError(f"{self.labels.shape[0]} labels for {self.samples.shape[0]} samples")
        if not np.all(np.isfinite(self.samples)):
            raise NonFiniteError("samples contain non-finite values")
        if not np.all(np.abs(self.labels) == 1):
            raise InvalidParameterError("labels must be +1 or -1")
        if self.ids is not None and len(self.ids) != self.size:
            raise DimensionMismatchError(f"{len(self.ids)} ids for {self.size} samples")
        return self

    def subset(self, indices) -> "Dataset":
        indices = np.asarray(indices, dtype=np.int64)
        ids = tuple(self.ids[i] for i in indices) if self.ids is not None else None
        return self._replace(samples=self.samples[indices], labels=self.labels[indices], ids=ids)

    def class_counts(self, indices=None) -> Dict[int, int]:
        labels = self.labels if indices is None else self.labels[np.asarray(indices, dtype=np.int64)]
        return {1: int(np.count_nonzero(labels > 0)), -1: int(np.count_nonzero(labels < 0))}


class StandardizationParams(NamedTuple):
    means: np.ndarray
    stds: np.ndarray  # population standard deviations, >= 0

    @property
    def d(self) -> int:
        return int(self.means.shape[0])


class SplitPlan(NamedTuple):
    """
    Train/test partition of a dataset, with fold assignments of the training part

    size: int  # M of the dataset the plan was drawn for
    train: np.ndarray  # dataset indices, ascending, after undersampling
    test: np.ndarray  # dataset indices, ascending
    folds: Optional[np.ndarray] = None  # fold id of every entry of `train`
    k: int = 0
    seed: int = 0  # split seed
    test_fraction: float = 0.0
    undersample_seed: Optional[int] = None  # None: no undersampling
    fold_seed: Optional[int] = None
    """

    size: int
    train: np.ndarray
    test: np.ndarray
    folds: Optional[np.ndarray] = None
    k: int = 0
    seed: int = 0
    test_fraction: float = 0.0
    undersample_seed: Optional[int] = None
    fold_seed: Optional[int] = None

    def fold_split(self, fold: int) -> Tuple[np.ndarray, np.ndarray]:
        """(fit positions, validation positions) into `train` for one fold"""

        if self.folds is None:
            raise InvalidParameterError("split plan has no fold assignments")
        mask = self.folds == fold
        return np.flatnonzero(~mask), np.flatnonzero(mask)

    def iter_folds(self) -> Iterator[Tuple[int, np.ndarray, np.ndarray]]:
        for fold in range(self.k):
            fit, val = self.fold_split(fold)
            yield fold, fit, val


class PreparedData(NamedTuple):
    """Standardized training and test arrays of a split plan"""

    train_samples: np.ndarray
    train_labels: np.ndarray
    test_samples: np.ndarray
    test_labels: np.ndarray
    params: StandardizationParams
    plan: SplitPlan
