from typing import List, Optional, Sequence, Dict
from os import PathLike
from pathlib import Path

import csv
import math

import numpy as np

from qsvm_py.data.inner import Dataset, DatasetSchema
from qsvm_py.utils import format_floats
from qsvm_py.errors import DataFormatError, EmptyInputError
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)


def _data_lines(fd):
    """Lines of `fd` with their 1-based line numbers, skipping `#` comments and blanks"""

    for lineno, line in enumerate(fd, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line


def _parse_label(cell: str, label_map: Dict[str, int]) -> Optional[int]:
    cell = cell.strip()
    if cell in label_map:
        return label_map[cell]
    # "1.0" and "1" name the same label
    try:
        num = float(cell)
    except ValueError:
        return None
    if math.isfinite(num) and num == int(num) and str(int(num)) in label_map:
        return label_map[str(int(num))]
    return None


def load_csv(path: PathLike, schema: DatasetSchema = DatasetSchema()) -> Dataset:
    """Parse a UTF-8 comma-separated file with a header row

    Errors name the file line and the column of the offending cell.
    """

    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"dataset file {path} does not exist")

    label_map = schema.labels()
    with path.open("r", encoding="utf-8", newline="") as fd:
        numbered = list(_data_lines(fd))

    if not numbered:
        raise EmptyInputError(f"dataset file {path} has no header row")

    linenos = [n for n, _ in numbered]
    rows = list(csv.reader(line for _, line in numbered))
    header = [c.strip() for c in rows[0]]

    if schema.label_column not in header:
        raise DataFormatError(f"label column missing, header: {header}", row=linenos[0], column=schema.label_column)
    if schema.id_column is not None and schema.id_column not in header:
        raise DataFormatError("id column missing", row=linenos[0], column=schema.id_column)

    if schema.feature_columns is None:
        features = [c for c in header if c not in (schema.label_column, schema.id_column)]
    else:
        features = list(schema.feature_columns)
        for name in features:
            if name not in header:
                raise DataFormatError("feature column missing", row=linenos[0], column=name)
    if not features:
        raise DataFormatError("no feature columns", row=linenos[0])

    feature_pos = [header.index(c) for c in features]
    label_pos = header.index(schema.label_column)
    id_pos = header.index(schema.id_column) if schema.id_column is not None else None

    samples: List[List[float]] = []
    labels: List[int] = []
    ids: List[str] = []
    for lineno, row in zip(linenos[1:], rows[1:]):
        if len(row) != len(header):
            raise DataFormatError(f"expected {len(header)} cells, got {len(row)}", row=lineno)

        vec = []
        for name, pos in zip(features, feature_pos):
            try:
                value = float(row[pos])
            except ValueError as err:
                raise DataFormatError(f"not a number: {row[pos]!r}", row=lineno, column=name, cause=err)
            if not math.isfinite(value):
                raise DataFormatError(f"non-finite value: {row[pos]!r}", row=lineno, column=name)
            vec.append(value)

        label = _parse_label(row[label_pos], label_map)
        if label is None:
            raise DataFormatError(
                f"unknown label {row[label_pos]!r}, expected one of {sorted(label_map)}",
                row=lineno,
                column=schema.label_column,
            )

        samples.append(vec)
        labels.append(label)
        if id_pos is not None:
            ids.append(row[id_pos].strip())

    if not samples:
        raise EmptyInputError(f"dataset file {path} has no data rows")

    logger.debug("`load_csv`: %s: M: %s, d: %s", path, len(samples), len(features))
    return Dataset(
        samples=np.array(samples, dtype=np.float64),
        labels=np.array(labels, dtype=np.float64),
        ids=tuple(ids) if id_pos is not None else None,
        feature_names=tuple(features),
    ).validate()


def dataset_csv_text(
    ds: Dataset,
    schema: DatasetSchema = DatasetSchema(),
    comments: Sequence[str] = (),
) -> str:
    names = schema.label_names()
    features = list(ds.feature_names or [f"x{j + 1}" for j in range(ds.d)])

    header = features + [schema.label_column]
    if ds.ids is not None:
        header = [schema.id_column or "id"] + header

    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(",".join(header))
    for i in range(ds.size):
        cells = [format_floats(ds.samples[i]), names[int(ds.labels[i])]]
        if ds.ids is not None:
            cells.insert(0, ds.ids[i])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(
    path: PathLike,
    ds: Dataset,
    schema: DatasetSchema = DatasetSchema(),
    comments: Sequence[str] = (),
):
    """Write `ds` in the format `load_csv` reads, preceded by `# ` comment lines"""

    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_text(dataset_csv_text(ds, schema, comments), encoding="utf-8")
