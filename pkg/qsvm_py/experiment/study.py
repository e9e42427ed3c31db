from typing import Optional, Sequence, List, Callable

import numpy as np

from qsvm_py.common.cache import GramCache
from qsvm_py.data import PreparedData
from qsvm_py.qsim import EncodingSpec, trotter_error, trotter_error_bound
from qsvm_py.experiment.inner import (
    GridSpec,
    QuantumGrid,
    SolverOptions,
    StudyRow,
    StudyReport,
    TrotterRow,
    EvalReport,
)
from qsvm_py.experiment.cv import cross_validate
from qsvm_py.experiment.evaluate import evaluate_test
from qsvm_py.errors import EmptyInputError, InvalidParameterError
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)


def study_seeds(num_seeds: int, base_seed: int = 0) -> List[int]:
    if num_seeds < 1:
        raise InvalidParameterError(f"num_seeds must be >= 1, got {num_seeds}")
    return list(range(base_seed, base_seed + num_seeds))


def random_pauli_study(
    prepared: PreparedData,
    t: float,
    s: int,
    n: int,
    seeds: Sequence[int],
    C_values: Sequence[float],
    baseline: Optional[GridSpec] = None,
    solver: SolverOptions = SolverOptions(),
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
    on_row: Optional[Callable[[StudyRow], None]] = None,
) -> StudyReport:
    """Repeat Pauli sampling, cross-validation of C and testing once per seed

    `baseline` is a classical grid; its cross-validated winner's test report
    rides along for reference.
    """

    if not seeds:
        raise EmptyInputError("study needs at least one seed")
    if len(set(seeds)) != len(seeds):
        logger.warning("`random_pauli_study`: duplicated seeds: %s", list(seeds))

    rows = []
    for seed in seeds:
        grid = GridSpec(quantum=QuantumGrid(n=(n,), t=(t,), s=(s,), C=tuple(C_values), pauli_seeds=(seed,)))
        cv = cross_validate(prepared, grid, solver=solver, cache=cache, max_workers=max_workers)
        chosen = cv.chosen
        test = evaluate_test(prepared, chosen.config, solver=solver, cache=cache, max_workers=max_workers)

        row = StudyRow(
            seed=int(seed),
            C=chosen.config.C,
            train_accuracy=chosen.mean_train,
            val_accuracy=chosen.mean_val,
            test_accuracy=test.accuracy,
        )
        logger.info("`random_pauli_study`: seed %s: test %.4f", seed, row.test_accuracy)
        if on_row is not None:
            on_row(row)
        rows.append(row)

    baseline_report: Optional[EvalReport] = None
    if baseline is not None and baseline.classical:
        cv = cross_validate(prepared, GridSpec(classical=baseline.classical), solver=solver, max_workers=max_workers)
        baseline_report = evaluate_test(prepared, cv.chosen.config, solver=solver, max_workers=max_workers)

    return StudyReport(rows=tuple(rows), n=int(n), t=float(t), s=int(s), baseline=baseline_report)


def trotter_study(samples, spec: EncodingSpec, s_values: Sequence[int]) -> List[TrotterRow]:
    """Mean and max distance between Trotterized and exact feature states for each step count,
    with the largest first-order commutator bound over the samples"""

    samples = np.asarray(samples, dtype=np.float64)
    if samples.ndim != 2 or samples.shape[0] == 0:
        raise EmptyInputError("trotter study needs at least one sample")

    rows = []
    for s in s_values:
        stepped = spec.with_steps(s)
        errors = np.array([trotter_error(x, stepped) for x in samples], dtype=np.float64)
        bound = max(trotter_error_bound(x, stepped) for x in samples)
        rows.append(
            TrotterRow(s=int(s), mean_error=float(errors.mean()), max_error=float(errors.max()), max_bound=float(bound))
        )
    return rows
