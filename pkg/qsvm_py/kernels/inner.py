from typing import Optional, Dict, Any, NamedTuple
from typing_extensions import Literal

import math

import numpy as np

from qsvm_py.errors import InvalidParameterError

TKernelFamily = Literal["linear", "rbf", "polynomial"]
KernelFamilies = ["linear", "rbf", "polynomial"]


class ClassicalKernelParams(NamedTuple):
    """Shape parameters of a classical kernel

    linear:     a . b
    rbf:        exp(-gamma |a - b|^2)
    polynomial: (gamma a . b + coef0)^degree

    `gamma` = None resolves to 1 / d at evaluation time.
    """

    family: TKernelFamily
    gamma: Optional[float] = None
    degree: int = 3
    coef0: float = 0.0

    def validate(self):
        if self.family not in KernelFamilies:
            raise InvalidParameterError(f"unknown kernel family {self.family!r}, expected one of {KernelFamilies}")
        if self.gamma is not None and (not math.isfinite(self.gamma) or self.gamma <= 0):
            raise InvalidParameterError(f"gamma must be > 0, got {self.gamma}")
        if self.family == "polynomial":
            if int(self.degree) != self.degree or self.degree < 1:
                raise InvalidParameterError(f"degree must be a positive integer, got {self.degree}")
            if not math.isfinite(self.coef0):
                raise InvalidParameterError(f"coef0 must be finite, got {self.coef0}")

    def resolved_gamma(self, d: int) -> float:
        return float(self.gamma) if self.gamma is not None else 1.0 / d

    def descriptor(self) -> Dict[str, Any]:
        desc: Dict[str, Any] = {"kind": self.family}
        if self.family in ("rbf", "polynomial"):
            desc["gamma"] = self.gamma
        if self.family == "polynomial":
            desc["degree"] = int(self.degree)
            desc["coef0"] = float(self.coef0)
        return desc


class KernelMatrix(NamedTuple):
    """A Gram matrix and the descriptor of the kernel that generated it"""

    entries: np.ndarray
    kind: Dict[str, Any]

    @property
    def size(self) -> int:
        return int(self.entries.shape[0])
