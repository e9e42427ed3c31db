from typing import List, Sequence
from os import PathLike
from pathlib import Path

import numpy as np

from qsvm_py.utils import format_floats
from qsvm_py.errors import DataFormatError


def gram_csv_text(entries: np.ndarray, header_lines: Sequence[str] = ()) -> str:
    lines = [f"# {line}" if line else "#" for line in header_lines]
    for row in np.asarray(entries, dtype=np.float64):
        lines.append(format_floats(row))
    return "\n".join(lines) + "\n"


def write_gram_csv(path: PathLike, entries: np.ndarray, header_lines: Sequence[str] = ()):
    """Write a kernel matrix as plain CSV, preceded by `# ` comment lines"""

    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_text(gram_csv_text(entries, header_lines), encoding="utf-8")


def read_gram_csv(path: PathLike) -> np.ndarray:
    rows: List[List[float]] = []
    with Path(path).open("r", encoding="utf-8") as fd:
        for lineno, line in enumerate(fd, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([float(v) for v in line.split(",")])
            except ValueError as err:
                raise DataFormatError(f"unparsable kernel entry: {err}", row=lineno, cause=err)

    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise DataFormatError(f"ragged kernel matrix in {path}")
    return np.array(rows, dtype=np.float64)
