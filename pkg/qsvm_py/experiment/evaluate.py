from typing import Optional, Tuple, Union

import numpy as np
from sklearn.metrics import roc_auc_score

from qsvm_py.common.cache import GramCache
from qsvm_py.data import Dataset, SplitPlan, PreparedData, prepare_datasets
from qsvm_py.qsim import EncodingSpec
from qsvm_py.kernels import ClassicalKernelParams, gram_matrix, cross_gram_matrix, kernel_descriptor
from qsvm_py.svm import SvmModel, solve_dual, decision_values, predict_batch, accuracy
from qsvm_py.svm.model import sign
from qsvm_py.experiment.inner import ModelConfig, EvalReport, SolverOptions
from qsvm_py.experiment.sampling import build_kernel
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

Kernel = Union[EncodingSpec, ClassicalKernelParams]


def fit_full(
    prepared: PreparedData,
    config: ModelConfig,
    solver: SolverOptions = SolverOptions(),
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
) -> Tuple[SvmModel, Kernel, np.ndarray]:
    """Train on the whole prepared training set, returning (model, kernel, Gram matrix)"""

    kernel = build_kernel(config, prepared.train_samples.shape[1])
    km = gram_matrix(prepared.train_samples, kernel, cache=cache, max_workers=max_workers)
    model = solve_dual(
        km, prepared.train_labels, config.C, tol=solver.tol, max_iter=solver.max_iter, check_psd=solver.check_psd
    )
    return model.with_samples(prepared.train_samples, kernel_descriptor(kernel)), kernel, km.entries


def decision_samples(model: SvmModel, samples, kernel: Kernel, max_workers: int = 1) -> np.ndarray:
    """Decision values of new samples; the model must carry its training samples"""

    if model.samples is None:
        raise ValueError("model has no training samples")
    cross = cross_gram_matrix(model.samples, samples, kernel, max_workers=max_workers)
    return decision_values(model, cross)


def predict_samples(model: SvmModel, samples, kernel: Kernel, max_workers: int = 1) -> np.ndarray:
    return sign(decision_samples(model, samples, kernel, max_workers=max_workers))


def confusion(predicted: np.ndarray, labels: np.ndarray) -> Tuple[int, int, int, int]:
    """(TP, TN, FP, FN) with +1 as the positive class"""

    pos = labels > 0
    hit = predicted == labels
    return (
        int(np.count_nonzero(hit & pos)),
        int(np.count_nonzero(hit & ~pos)),
        int(np.count_nonzero(~hit & ~pos)),
        int(np.count_nonzero(~hit & pos)),
    )


def _ratio(num: int, den: int) -> Optional[float]:
    return num / den if den else None


def roc_auc(scores: np.ndarray, labels: np.ndarray) -> Optional[float]:
    """Area under the ROC curve of decision values, None unless both classes are present"""

    labels = np.asarray(labels)
    if not (np.any(labels > 0) and np.any(labels < 0)):
        return None
    return float(roc_auc_score(labels > 0, np.asarray(scores, dtype=np.float64)))


def score_model(
    prepared: PreparedData,
    config: ModelConfig,
    model: SvmModel,
    kernel: Kernel,
    gram: np.ndarray,
    max_workers: int = 1,
) -> EvalReport:
    """Training and test metrics of a model fitted by `fit_full`"""

    train_acc = accuracy(predict_batch(model, gram), prepared.train_labels)

    scores = decision_samples(model, prepared.test_samples, kernel, max_workers=max_workers)
    predicted = sign(scores)
    labels = prepared.test_labels
    tp, tn, fp, fn = confusion(predicted, labels)
    total = tp + tn + fp + fn
    correct = tp + tn

    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = None
    if precision is not None and recall is not None and precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)

    acc = correct / total
    logger.debug("`score_model`: %s: %s / %s correct", config.label(), correct, total)
    return EvalReport(
        config=config,
        accuracy=acc,
        error_rate=1.0 - acc,
        tp=tp,
        tn=tn,
        fp=fp,
        fn=fn,
        train_accuracy=train_acc,
        support_vectors=int(model.support_indices.size),
        precision=precision,
        recall=recall,
        f1=f1,
        auc=roc_auc(scores, labels),
    )


def evaluate_test(
    prepared: PreparedData,
    config: ModelConfig,
    solver: SolverOptions = SolverOptions(),
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
) -> EvalReport:
    """Retrain on the full training set and score the held-out test set"""

    model, kernel, gram = fit_full(prepared, config, solver=solver, cache=cache, max_workers=max_workers)
    return score_model(prepared, config, model, kernel, gram, max_workers=max_workers)


def run_eval(
    ds: Dataset,
    plan: SplitPlan,
    config: ModelConfig,
    solver: SolverOptions = SolverOptions(),
    cache: Optional[GramCache] = None,
    max_workers: int = 1,
    standardize_features: bool = True,
) -> EvalReport:
    prepared = prepare_datasets(ds, plan, standardize_features=standardize_features)
    return evaluate_test(prepared, config, solver=solver, cache=cache, max_workers=max_workers)
