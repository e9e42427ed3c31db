from typing import Optional, Tuple, List, Dict, Any, NamedTuple
from typing_extensions import Literal

import math

import numpy as np

from qsvm_py.kernels import KernelFamilies
from qsvm_py.errors import InvalidParameterError, EmptyInputError

TModelKind = Literal["quantum", "linear", "rbf", "polynomial"]
ModelKinds = ["quantum"] + KernelFamilies


class ModelConfig(NamedTuple):
    """One point of a hyperparameter grid

    Quantum configurations use n, t, s and pauli_seed; classical ones use
    gamma, degree and coef0 as their family needs. C applies to both.
    """

    kind: TModelKind
    C: float
    n: Optional[int] = None
    t: Optional[float] = None
    s: Optional[int] = None
    pauli_seed: Optional[int] = None
    gamma: Optional[float] = None
    degree: Optional[int] = None
    coef0: Optional[float] = None

    @property
    def is_quantum(self) -> bool:
        return self.kind == "quantum"

    def kernel_key(self) -> Tuple:
        """Everything that determines the Gram matrix (C excluded)"""

        return tuple(self)[:1] + tuple(self)[2:]

    def validate(self) -> "ModelConfig":
        if self.kind not in ModelKinds:
            raise InvalidParameterError(f"unknown model kind {self.kind!r}, expected one of {ModelKinds}")
        if not math.isfinite(self.C) or self.C <= 0:
            raise InvalidParameterError(f"C must be > 0, got {self.C}")
        if self.is_quantum:
            for name in ("n", "t", "s", "pauli_seed"):
                if getattr(self, name) is None:
                    raise InvalidParameterError(f"quantum configuration needs {name}")
        return self

    def as_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in self._asdict().items() if v is not None}

    def label(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.as_dict().items())


class QuantumGrid(NamedTuple):
    n: Tuple[int, ...]
    t: Tuple[float, ...]
    s: Tuple[int, ...]
    C: Tuple[float, ...]
    pauli_seeds: Tuple[int, ...]


class ClassicalGrid(NamedTuple):
    """One kernel family and its axes; gamma None means 1 / d"""

    family: str
    C: Tuple[float, ...]
    gamma: Tuple[Optional[float], ...] = (None,)
    degree: Tuple[int, ...] = (3,)
    coef0: float = 0.0


class GridSpec(NamedTuple):
    quantum: Optional[QuantumGrid] = None
    classical: Tuple[ClassicalGrid, ...] = ()

    def validate(self) -> "GridSpec":
        if self.quantum is None and not self.classical:
            raise EmptyInputError("grid has no configurations")
        if self.quantum is not None:
            for name in ("n", "t", "s", "C", "pauli_seeds"):
                if not getattr(self.quantum, name):
                    raise EmptyInputError(f"quantum grid axis {name} is empty")
        for entry in self.classical:
            if not entry.C:
                raise EmptyInputError(f"{entry.family} grid has no C values")
        for config in self.configurations():
            config.validate()
        return self

    def configurations(self) -> List[ModelConfig]:
        """Grid points in a fixed order

        Quantum first (qubit count, then pauli seed, then t, then s, then C),
        then every classical family in listed order.
        """

        configs: List[ModelConfig] = []
        q = self.quantum
        if q is not None:
            for n in q.n:
                for seed in q.pauli_seeds:
                    for t in q.t:
                        for s in q.s:
                            for C in q.C:
                                configs.append(
                                    ModelConfig(
                                        kind="quantum",
                                        C=float(C),
                                        n=int(n),
                                        t=float(t),
                                        s=int(s),
                                        pauli_seed=int(seed),
                                    )
                                )

        for entry in self.classical:
            family = entry.family
            gammas = entry.gamma if family in ("rbf", "polynomial") else (None,)
            degrees = entry.degree if family == "polynomial" else (None,)
            for gamma in gammas:
                for degree in degrees:
                    for C in entry.C:
                        configs.append(
                            ModelConfig(
                                kind=family,  # type: ignore
                                C=float(C),
                                gamma=None if gamma is None else float(gamma),
                                degree=None if degree is None else int(degree),
                                coef0=float(entry.coef0) if family == "polynomial" else None,
                            )
                        )
        return configs


class FoldResult(NamedTuple):
    fold: int
    train_accuracy: float
    val_accuracy: float


class ConfigResult(NamedTuple):
    index: int
    config: ModelConfig
    folds: Tuple[FoldResult, ...]

    @property
    def mean_train(self) -> float:
        return float(np.mean([f.train_accuracy for f in self.folds]))

    @property
    def std_train(self) -> float:
        return float(np.std([f.train_accuracy for f in self.folds]))

    @property
    def mean_val(self) -> float:
        return float(np.mean([f.val_accuracy for f in self.folds]))

    @property
    def std_val(self) -> float:
        return float(np.std([f.val_accuracy for f in self.folds]))

    @property
    def gap(self) -> float:
        return self.mean_train - self.mean_val


class CvReport(NamedTuple):
    results: Tuple[ConfigResult, ...]
    chosen_index: int
    k: int

    @property
    def chosen(self) -> ConfigResult:
        return self.results[self.chosen_index]


class EvalReport(NamedTuple):
    """
    Held-out metrics of a model retrained on the whole training set

    precision, recall and f1 are None when undefined (zero denominator), auc
    (from the test decision values) when the test set lacks a class
    """

    config: ModelConfig
    accuracy: float
    error_rate: float
    tp: int
    tn: int
    fp: int
    fn: int
    train_accuracy: float
    support_vectors: int
    precision: Optional[float] = None
    recall: Optional[float] = None
    f1: Optional[float] = None
    auc: Optional[float] = None

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


class BoundReport(NamedTuple):
    alpha_norm_sq: float
    kappa: float
    t: float
    M: int
    delta: float
    multiplier: float  # 1 + 1/2 sqrt(log(1/delta) / 2)
    value: float

    @property
    def kappa_negative(self) -> bool:
        return self.kappa < 0


class StudyRow(NamedTuple):
    seed: int
    C: float
    train_accuracy: float
    val_accuracy: float
    test_accuracy: float


class StudyReport(NamedTuple):
    rows: Tuple[StudyRow, ...]
    n: int
    t: float
    s: int
    baseline: Optional[EvalReport] = None

    def summary(self) -> Dict[str, float]:
        """min / median / max of the test accuracies"""

        acc = np.array([r.test_accuracy for r in self.rows], dtype=np.float64)
        if acc.size == 0:
            return {}
        return {"min": float(acc.min()), "median": float(np.median(acc)), "max": float(acc.max())}


class TrotterRow(NamedTuple):
    s: int
    mean_error: float
    max_error: float
    max_bound: float


class SolverOptions(NamedTuple):
    tol: float = 1e-6
    max_iter: int = 10**7
    check_psd: bool = True
