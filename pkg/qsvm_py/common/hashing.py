from typing import Any, Dict
import hashlib

import numpy as np

from qsvm_py.utils import dump_json


def content_hash(samples: np.ndarray, descriptor: Dict[str, Any]) -> str:
    """SHA-256 over the sample matrix (little-endian float64, with shape) and the
    canonical JSON of a kernel descriptor"""

    arr = np.ascontiguousarray(np.asarray(samples, dtype="<f8"))
    h = hashlib.sha256()
    h.update(dump_json(list(arr.shape)).encode("utf-8"))
    h.update(arr.tobytes())
    h.update(dump_json(descriptor).encode("utf-8"))
    return h.hexdigest()
