from typing import Optional, Callable, Dict, List, Tuple

import numpy as np

from qsvm_py.common.cache import GramCache
from qsvm_py.common.concurrent import ordered_map
from qsvm_py.data import Dataset, SplitPlan, PreparedData, prepare_datasets
from qsvm_py.kernels import gram_matrix, min_eigenvalue
from qsvm_py.svm import solve_dual, predict_batch, accuracy
from qsvm_py.experiment.inner import GridSpec, ModelConfig, FoldResult, ConfigResult, CvReport, SolverOptions
from qsvm_py.experiment.sampling import build_kernel
from qsvm_py.errors import InvalidParameterError, InsufficientClassError
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

PSD_WARN_LEVEL = -1e-6


def _check_fold(fold: int, fit_labels: np.ndarray, val_labels: np.ndarray):
    for name, labels in (("training", fit_labels), ("validation", val_labels)):
        if not (np.any(labels > 0) and np.any(labels < 0)):
            raise InsufficientClassError(f"fold {fold} {name} part is missing a class")


def select_best(results: List[ConfigResult]) -> int:
    """Highest mean validation accuracy, then smallest train/validation gap, then lowest index"""

    best = min(results, key=lambda r: (-r.mean_val, r.gap, r.index))
    return best.index


def training_grams(
    prepared: PreparedData,
    configs: List[ModelConfig],
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
    check_psd: bool = True,
) -> Dict[Tuple, np.ndarray]:
    """One full training Gram matrix per distinct kernel, in first-use order"""

    grams: Dict[Tuple, np.ndarray] = {}
    d = prepared.train_samples.shape[1]
    for config in configs:
        key = config.kernel_key()
        if key in grams:
            continue

        kernel = build_kernel(config, d)
        entries = gram_matrix(prepared.train_samples, kernel, cache=cache, max_workers=max_workers).entries
        if check_psd:
            min_eig = min_eigenvalue(entries)
            if min_eig < PSD_WARN_LEVEL:
                logger.warning("`training_grams`: kernel %s is not PSD, min eigenvalue: %s", key, min_eig)
        grams[key] = entries
    return grams


def evaluate_config(
    index: int,
    config: ModelConfig,
    gram: np.ndarray,
    prepared: PreparedData,
    solver: SolverOptions = SolverOptions(),
) -> ConfigResult:
    y = prepared.train_labels
    folds = []
    for fold, fit, val in prepared.plan.iter_folds():
        _check_fold(fold, y[fit], y[val])

        k_fit = gram[np.ix_(fit, fit)]
        k_val = gram[np.ix_(val, fit)]
        model = solve_dual(k_fit, y[fit], config.C, tol=solver.tol, max_iter=solver.max_iter, check_psd=False)

        folds.append(
            FoldResult(
                fold=fold,
                train_accuracy=accuracy(predict_batch(model, k_fit), y[fit]),
                val_accuracy=accuracy(predict_batch(model, k_val), y[val]),
            )
        )
    return ConfigResult(index=index, config=config, folds=tuple(folds))


def cross_validate(
    prepared: PreparedData,
    grid: GridSpec,
    solver: SolverOptions = SolverOptions(),
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
    on_result: Optional[Callable[[ConfigResult], None]] = None,
) -> CvReport:
    """k-fold cross-validation of every grid configuration on the prepared training set

    Each distinct kernel builds its Gram matrix once; folds slice it.
    Configurations run concurrently when `max_workers` > 1, and results are
    assembled in configuration order.
    """

    plan = prepared.plan
    if plan.folds is None or plan.k < 2:
        raise InvalidParameterError("split plan has no fold assignments")

    configs = grid.validate().configurations()
    grams = training_grams(prepared, configs, cache=cache, max_workers=max_workers, check_psd=solver.check_psd)

    def run(index: int) -> ConfigResult:
        config = configs[index]
        result = evaluate_config(index, config, grams[config.kernel_key()], prepared, solver)
        logger.info("`cross_validate`: [%s] %s: val %.4f", index, config.label(), result.mean_val)
        if on_result is not None:
            on_result(result)
        return result

    results = ordered_map(run, list(range(len(configs))), max_workers=max_workers)
    chosen = select_best(results)
    logger.debug("`cross_validate`: chosen: %s", configs[chosen].label())
    return CvReport(results=tuple(results), chosen_index=chosen, k=plan.k)


def run_cv(
    ds: Dataset,
    plan: SplitPlan,
    grid: GridSpec,
    solver: SolverOptions = SolverOptions(),
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
    standardize_features: bool = True,
    on_result: Optional[Callable[[ConfigResult], None]] = None,
) -> CvReport:
    prepared = prepare_datasets(ds, plan, standardize_features=standardize_features)
    return cross_validate(prepared, grid, solver=solver, cache=cache, max_workers=max_workers, on_result=on_result)
