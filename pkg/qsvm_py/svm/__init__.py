from .inner import SvmModel
from .solver import (
    DEFAULT_TOL,
    DEFAULT_MAX_ITER,
    solve_dual,
    compute_bias,
    dual_objective,
    kkt_violation,
)
from .model import (
    decision_values,
    predict,
    predict_batch,
    accuracy,
    model_text,
    save_model,
    load_model,
)


__all__ = [
    "SvmModel",
    "DEFAULT_TOL",
    "DEFAULT_MAX_ITER",
    "solve_dual",
    "compute_bias",
    "dual_objective",
    "kkt_violation",
    "decision_values",
    "predict",
    "predict_batch",
    "accuracy",
    "model_text",
    "save_model",
    "load_model",
]
