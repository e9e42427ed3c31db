from typing import Sequence, List, Optional
from os import PathLike
from pathlib import Path

import json

import numpy as np

from qsvm_py.common.constant import MODEL_FORMAT_VERSION, SUPPORT_THRESHOLD
from qsvm_py.svm.inner import SvmModel
from qsvm_py.utils import dump_json, format_float, format_floats
from qsvm_py.errors import DimensionMismatchError, NonFiniteError, DataFormatError

MODEL_MAGIC = f"# qsvm-model v{MODEL_FORMAT_VERSION}"


def decision_values(model: SvmModel, cross_kernel) -> np.ndarray:
    """sum_i a_i y_i K(x, x_i) + b for every row of an L x M cross kernel"""

    rows = np.asarray(cross_kernel, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[1] != model.size:
        raise DimensionMismatchError(f"cross kernel must have shape (L, {model.size}), got {rows.shape}")
    if not np.all(np.isfinite(rows)):
        raise NonFiniteError("cross kernel contains non-finite values")
    return rows @ model.coefficients + model.bias


def sign(values: np.ndarray) -> np.ndarray:
    """sign with sign(0) = +1"""

    return np.where(np.asarray(values) >= 0, 1, -1).astype(np.int64)


def predict(model: SvmModel, cross_kernel_row: Sequence[float]) -> int:
    row = np.asarray(cross_kernel_row, dtype=np.float64)
    if row.ndim != 1:
        raise DimensionMismatchError(f"expected a kernel row, got shape {row.shape}")
    return int(sign(decision_values(model, row.reshape(1, -1)))[0])


def predict_batch(model: SvmModel, cross_kernel) -> np.ndarray:
    return sign(decision_values(model, cross_kernel))


def accuracy(predicted, labels) -> float:
    predicted = np.asarray(predicted)
    labels = np.asarray(labels)
    if predicted.shape != labels.shape:
        raise DimensionMismatchError(f"{predicted.shape[0]} predictions for {labels.shape[0]} labels")
    if labels.size == 0:
        return 0.0
    return float(np.count_nonzero(predicted == labels)) / labels.size


def model_text(model: SvmModel, comments: Sequence[str] = ()) -> str:
    """Versioned plain-text form of a model

    # qsvm-model v1
    # M: <samples>
    # C: <penalty>
    # bias: <b>
    # iterations: <pair updates>
    # kernel: <descriptor json>
    ## <free comment lines>
    <alpha>,<label>[,<x_1>,...,<x_d>]
    """

    lines = [
        MODEL_MAGIC,
        f"# M: {model.size}",
        f"# C: {format_float(model.C)}",
        f"# bias: {format_float(model.bias)}",
        f"# iterations: {model.iterations}",
        f"# kernel: {dump_json(model.kernel)}",
    ]
    lines.extend(f"## {c}" if c else "##" for c in comments)

    samples = model.samples
    for i in range(model.size):
        fields = [format_float(model.alphas[i]), str(int(model.labels[i]))]
        if samples is not None:
            fields.append(format_floats(samples[i]))
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def save_model(path: PathLike, model: SvmModel, comments: Sequence[str] = ()):
    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_text(model_text(model, comments), encoding="utf-8")


def load_model(path: PathLike) -> SvmModel:
    with Path(path).open("r", encoding="utf-8") as fd:
        lines = fd.read().splitlines()

    if not lines or lines[0].strip() != MODEL_MAGIC:
        raise DataFormatError(f"not a model file, expected first line {MODEL_MAGIC!r}", row=1)

    header = {}
    alphas: List[float] = []
    labels: List[float] = []
    samples: List[List[float]] = []
    width: Optional[int] = None

    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line or line.startswith("##"):
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            header[key.strip()] = value.strip()
            continue

        fields = line.split(",")
        if width is None:
            width = len(fields)
        if len(fields) != width or width < 2:
            raise DataFormatError(f"expected {width} fields, got {len(fields)}", row=lineno)
        try:
            alphas.append(float(fields[0]))
            labels.append(float(int(fields[1])))
            if width > 2:
                samples.append([float(v) for v in fields[2:]])
        except ValueError as err:
            raise DataFormatError(f"unparsable value: {err}", row=lineno, cause=err)

    for key in ("M", "C", "bias", "kernel"):
        if key not in header:
            raise DataFormatError(f"missing header field {key!r}")

    try:
        size = int(header["M"])
        C = float(header["C"])
        bias = float(header["bias"])
        iterations = int(header.get("iterations", "0"))
        kernel = json.loads(header["kernel"])
    except ValueError as err:
        raise DataFormatError(f"bad header: {err}", cause=err)

    if size != len(alphas):
        raise DataFormatError(f"header declares {size} samples, found {len(alphas)}")

    arr = np.array(alphas, dtype=np.float64)
    return SvmModel(
        alphas=arr,
        bias=bias,
        C=C,
        labels=np.array(labels, dtype=np.float64),
        support_indices=np.flatnonzero(arr > SUPPORT_THRESHOLD),
        samples=np.array(samples, dtype=np.float64) if samples else None,
        kernel=kernel,
        iterations=iterations,
    )
