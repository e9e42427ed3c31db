from typing import Optional
from functools import wraps

import math

# Kernel values within this distance of [0, 1] are clamped, larger excursions are bugs
UNIT_INTERVAL_TOL = 1e-12


class QsvmError(Exception):
    error_code: Optional[int] = None

    def __init__(self, message: str, error_code: Optional[int] = None, cause=None):
        self.__cause__ = cause
        if error_code is not None:
            self.error_code = error_code
        super().__init__(message)


class DimensionMismatchError(QsvmError):
    error_code = 1


class NonFiniteError(QsvmError):
    error_code = 2


class DenseLimitError(QsvmError):
    error_code = 3


class KernelRangeError(QsvmError):
    error_code = 4


class InvalidParameterError(QsvmError):
    error_code = 5


class EmptyInputError(QsvmError):
    error_code = 6


class SingleClassError(QsvmError):
    error_code = 20


class DegenerateModelError(QsvmError):
    error_code = 21


class ConvergenceError(QsvmError):
    error_code = 22


class DataFormatError(QsvmError):
    error_code = 30

    def __init__(
        self,
        message: str,
        row: Optional[int] = None,
        column: Optional[str] = None,
        cause=None,
    ):
        self.row = row
        self.column = column
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message, cause=cause)


class InsufficientClassError(QsvmError):
    error_code = 31


def clamp_unit_interval(value: float, tol: float = UNIT_INTERVAL_TOL) -> float:
    """Clamp `value` to [0, 1] when it lies within `tol` of the interval"""

    if not math.isfinite(value) or value < -tol or value > 1.0 + tol:
        raise KernelRangeError(f"kernel value {value!r} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def assert_unit_interval(func):
    """Assert the kernel value returned by `func` is in [0, 1]"""

    @wraps(func)
    def check(*args, **kwargs):
        return clamp_unit_interval(float(func(*args, **kwargs)))

    return check
