from typing import Tuple, Union

from qsvm_py.common.constant import PAULI_SYMBOLS
from qsvm_py.common.random import make_rng
from qsvm_py.qsim import PauliString, EncodingSpec
from qsvm_py.kernels import ClassicalKernelParams
from qsvm_py.experiment.inner import ModelConfig
from qsvm_py.errors import InvalidParameterError


def sample_pauli_strings(d: int, n: int, seed: int) -> Tuple[PauliString, ...]:
    """d strings drawn i.i.d. uniformly from the 4^n n-qubit Pauli strings

    Symbol k of string j is PAULI_SYMBOLS[draw[j, k]] with draw an integer
    matrix of shape (d, n) from `make_rng(seed)`. Duplicates are allowed.
    """

    if d < 1:
        raise InvalidParameterError(f"d must be >= 1, got {d}")
    if n < 1:
        raise InvalidParameterError(f"n must be >= 1, got {n}")

    draw = make_rng(seed).integers(0, len(PAULI_SYMBOLS), size=(d, n))
    return tuple(PauliString("".join(PAULI_SYMBOLS[k] for k in row)) for row in draw)


def build_kernel(config: ModelConfig, d: int) -> Union[EncodingSpec, ClassicalKernelParams]:
    """The kernel a configuration trains with, for d-dimensional samples"""

    config.validate()
    if config.is_quantum:
        paulis = sample_pauli_strings(d, int(config.n), int(config.pauli_seed))
        return EncodingSpec.build(paulis, t=float(config.t), s=int(config.s), n=int(config.n))

    params = ClassicalKernelParams(
        family=config.kind,  # type: ignore
        gamma=config.gamma,
        degree=3 if config.degree is None else int(config.degree),
        coef0=0.0 if config.coef0 is None else float(config.coef0),
    )
    params.validate()
    return params
