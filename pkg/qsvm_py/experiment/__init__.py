from .inner import (
    ModelKinds,
    ModelConfig,
    QuantumGrid,
    ClassicalGrid,
    GridSpec,
    FoldResult,
    ConfigResult,
    CvReport,
    EvalReport,
    BoundReport,
    StudyRow,
    StudyReport,
    TrotterRow,
    SolverOptions,
)
from .sampling import sample_pauli_strings, build_kernel
from .cv import select_best, training_grams, cross_validate, run_cv
from .evaluate import (
    fit_full,
    decision_samples,
    predict_samples,
    confusion,
    roc_auc,
    score_model,
    evaluate_test,
    run_eval,
)
from .bound import confidence_multiplier, kappa, generalization_bound, bound_curve
from .study import study_seeds, random_pauli_study, trotter_study


__all__ = [
    "ModelKinds",
    "ModelConfig",
    "QuantumGrid",
    "ClassicalGrid",
    "GridSpec",
    "FoldResult",
    "ConfigResult",
    "CvReport",
    "EvalReport",
    "BoundReport",
    "StudyRow",
    "StudyReport",
    "TrotterRow",
    "SolverOptions",
    "sample_pauli_strings",
    "build_kernel",
    "select_best",
    "training_grams",
    "cross_validate",
    "run_cv",
    "fit_full",
    "decision_samples",
    "predict_samples",
    "roc_auc",
    "confusion",
    "score_model",
    "evaluate_test",
    "run_eval",
    "confidence_multiplier",
    "kappa",
    "generalization_bound",
    "bound_curve",
    "study_seeds",
    "random_pauli_study",
    "trotter_study",
]
