from typing import Optional, Dict, Any, NamedTuple, List

import numpy as np


class SvmModel(NamedTuple):
    """
    A trained soft-margin SVM

    alphas: np.ndarray  # dual coefficients, each in [0, C]
    bias: float
    C: float  # penalty
    labels: np.ndarray  # training labels in {+1, -1}
    support_indices: np.ndarray  # indices with alpha > SUPPORT_THRESHOLD
    samples: Optional[np.ndarray] = None  # training samples, needed to predict new points
    kernel: Optional[Dict[str, Any]] = None  # descriptor of the kernel the model was trained on
    iterations: int = 0  # pair updates made by the solver
    """

    alphas: np.ndarray
    bias: float
    C: float
    labels: np.ndarray
    support_indices: np.ndarray
    samples: Optional[np.ndarray] = None
    kernel: Optional[Dict[str, Any]] = None
    iterations: int = 0

    @property
    def size(self) -> int:
        return int(self.alphas.shape[0])

    @property
    def coefficients(self) -> np.ndarray:
        """alpha_i * y_i"""

        return self.alphas * self.labels

    def free_indices(self) -> List[int]:
        eps = 1e-8 * min(1.0, self.C)
        mask = (self.alphas > eps) & (self.alphas < self.C - eps)
        return [int(i) for i in np.flatnonzero(mask)]

    def with_samples(self, samples: np.ndarray, kernel: Optional[Dict[str, Any]] = None) -> "SvmModel":
        return self._replace(samples=np.asarray(samples, dtype=np.float64), kernel=kernel or self.kernel)
