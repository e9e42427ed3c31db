from typing import Optional, Dict, Any, List
from os import PathLike
from pathlib import Path
from collections import OrderedDict
from threading import Lock

import sqlite3

import numpy as np

from qsvm_py.utils import dump_json


GRAM_TABLE = "gram_matrix"

CREATE_GRAM_TABLE = f"""
CREATE TABLE IF NOT EXISTS {GRAM_TABLE}
(
    key TEXT PRIMARY KEY,

    rows INTEGER NOT NULL,
    cols INTEGER NOT NULL,

    descriptor TEXT NULL,
    data BLOB NOT NULL,

    record_time TIMESTAMP DEFAULT CURRENT_TIMESTAMP
)
"""

GRAM_TABLE_COLS = [c.strip().split(" ", 1)[0] for c in CREATE_GRAM_TABLE.split("\n") if c.startswith("    ")]

INSERT_GRAM = f"""
INSERT OR IGNORE INTO {GRAM_TABLE}
    (
        key,

        rows,
        cols,

        descriptor,
        data
    )
VALUES (?,?,?,?,?)
"""

SELECT_GRAM = f"SELECT rows, cols, data FROM {GRAM_TABLE} WHERE key = ?"


class GramCache:
    """Gram matrices keyed by content hash

    Reads hit an in-memory dict first, then the optional sqlite file.
    Lookups, insertions and the hit/miss counters share one lock.
    """

    def __init__(self, db_path: Optional[PathLike] = None):
        self._db_path = db_path
        self._mem: Dict[str, np.ndarray] = {}
        self._lock = Lock()
        self._conn: Optional[sqlite3.Connection] = None
        self.hits = 0
        self.misses = 0

        if db_path:
            path = Path(db_path).expanduser()
            if not path.parent.exists():
                path.parent.mkdir(parents=True)
            self._conn = sqlite3.connect(str(path), check_same_thread=False)

            c = self._conn.cursor()
            c.execute(CREATE_GRAM_TABLE)
            self._conn.commit()

    def get(self, key: str) -> Optional[np.ndarray]:
        with self._lock:
            mat = self._mem.get(key)
            if mat is not None:
                self.hits += 1
                return mat

            if self._conn is not None:
                c = self._conn.cursor()
                c.execute(SELECT_GRAM, (key,))
                row = c.fetchone()
                if row is not None:
                    rows, cols, data = row
                    mat = np.frombuffer(data, dtype="<f8").reshape(rows, cols).astype(np.float64)
                    mat.setflags(write=False)
                    self._mem[key] = mat
                    self.hits += 1
                    return mat

            self.misses += 1
            return None

    def put(self, key: str, matrix: np.ndarray, descriptor: Optional[Dict[str, Any]] = None):
        mat = np.array(matrix, dtype=np.float64)
        mat.setflags(write=False)
        with self._lock:
            self._mem.setdefault(key, mat)
            if self._conn is not None:
                c = self._conn.cursor()
                c.execute(
                    INSERT_GRAM,
                    (
                        key,
                        mat.shape[0],
                        mat.shape[1],
                        dump_json(descriptor) if descriptor is not None else None,
                        np.ascontiguousarray(mat, dtype="<f8").tobytes(),
                    ),
                )
                self._conn.commit()

    def list(self) -> List[Dict[str, Any]]:
        """Records stored in the sqlite file, newest first, without matrix data"""

        if self._conn is None:
            return []

        cols = [c for c in GRAM_TABLE_COLS if c != "data"]
        sql = f"SELECT {', '.join(cols)} FROM {GRAM_TABLE} ORDER BY record_time DESC"
        with self._lock:
            c = self._conn.cursor()
            c.execute(sql)
            return [OrderedDict(zip(cols, r)) for r in c.fetchall()]

    def close(self):
        if self._conn is not None:
            self._conn.close()
            self._conn = None
