from typing import Iterable
import json

from qsvm_py.common.constant import FLOAT_DIGITS


def dump_json(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False, sort_keys=True)


def format_float(value: float) -> str:
    """Full precision text form of a real number (exact round trip)"""

    return format(float(value), f".{FLOAT_DIGITS}g")


def format_floats(values: Iterable[float], sep: str = ",") -> str:
    return sep.join(format_float(v) for v in values)


def format_percent(value: float) -> str:
    return f"{value * 100:.1f}%"
