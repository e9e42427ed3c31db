"""Run reports (YAML) and plotting tables (CSV)

Every file opens with `# ` comment lines holding the tool version and the
resolved configuration. Nothing time-dependent is written, so reruns of a
fixed configuration produce byte-identical files.
"""

from typing import Any, Dict, List, Optional, Sequence
from os import PathLike
from pathlib import Path

import csv
import io

import yaml

from qsvm_py.experiment.inner import (
    ModelConfig,
    ConfigResult,
    CvReport,
    EvalReport,
    BoundReport,
    StudyReport,
    TrotterRow,
)
from qsvm_py import __version__
from qsvm_py.utils import format_float


def header_lines(title: str, config: Optional[Dict[str, Any]] = None) -> List[str]:
    lines = [f"{title} (qsvm-py v{__version__})"]
    if config is not None:
        lines.append("resolved config:")
        dumped = yaml.safe_dump(config, sort_keys=True, default_flow_style=False)
        lines.extend("  " + line for line in dumped.splitlines())
    return lines


def _comment(lines: Sequence[str]) -> str:
    return "".join(f"# {line}\n" if line else "#\n" for line in lines)


def _prepare(path: PathLike) -> Path:
    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    return path


def yaml_text(data: Dict[str, Any], header: Sequence[str] = ()) -> str:
    return _comment(header) + yaml.safe_dump(data, sort_keys=False, default_flow_style=False)


def write_yaml_report(path: PathLike, data: Dict[str, Any], header: Sequence[str] = ()):
    _prepare(path).write_text(yaml_text(data, header), encoding="utf-8")


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def csv_text(fieldnames: Sequence[str], rows: Sequence[Dict[str, Any]], header: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    buf.write(_comment(header))
    writer = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _cell(row.get(k)) for k in fieldnames})
    return buf.getvalue()


def write_csv_table(
    path: PathLike,
    fieldnames: Sequence[str],
    rows: Sequence[Dict[str, Any]],
    header: Sequence[str] = (),
):
    _prepare(path).write_text(csv_text(fieldnames, rows, header), encoding="utf-8")


# Dict forms, plain Python scalars only


def config_dict(config: ModelConfig) -> Dict[str, Any]:
    return dict(config.as_dict())


def config_result_dict(result: ConfigResult) -> Dict[str, Any]:
    return {
        "index": result.index,
        "config": config_dict(result.config),
        "mean_train_accuracy": result.mean_train,
        "std_train_accuracy": result.std_train,
        "mean_val_accuracy": result.mean_val,
        "std_val_accuracy": result.std_val,
        "folds": [
            {"fold": f.fold, "train_accuracy": float(f.train_accuracy), "val_accuracy": float(f.val_accuracy)}
            for f in result.folds
        ],
    }


def cv_report_dict(report: CvReport) -> Dict[str, Any]:
    chosen = report.chosen
    return {
        "k": report.k,
        "chosen": {
            "index": chosen.index,
            "config": config_dict(chosen.config),
            "mean_train_accuracy": chosen.mean_train,
            "mean_val_accuracy": chosen.mean_val,
        },
        "configurations": [config_result_dict(r) for r in report.results],
    }


def eval_report_dict(report: EvalReport) -> Dict[str, Any]:
    return {
        "config": config_dict(report.config),
        "accuracy": float(report.accuracy),
        "error_rate": float(report.error_rate),
        "train_accuracy": float(report.train_accuracy),
        "confusion": {"tp": report.tp, "tn": report.tn, "fp": report.fp, "fn": report.fn},
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "auc": report.auc,
        "support_vectors": report.support_vectors,
        "test_size": report.total,
    }


def bound_report_dict(report: BoundReport) -> Dict[str, Any]:
    return {
        "alpha_norm_sq": report.alpha_norm_sq,
        "kappa": report.kappa,
        "kappa_negative": report.kappa_negative,
        "t": report.t,
        "M": report.M,
        "delta": report.delta,
        "multiplier": report.multiplier,
        "bound": report.value,
    }


def study_report_dict(report: StudyReport) -> Dict[str, Any]:
    return {
        "n": report.n,
        "t": report.t,
        "s": report.s,
        "summary": report.summary(),
        "rows": [dict(r._asdict()) for r in report.rows],
        "baseline": eval_report_dict(report.baseline) if report.baseline is not None else None,
    }


# CSV tables

CV_FIELDS = [
    "index",
    "kind",
    "C",
    "n",
    "t",
    "s",
    "pauli_seed",
    "gamma",
    "degree",
    "coef0",
    "mean_train_accuracy",
    "std_train_accuracy",
    "mean_val_accuracy",
    "std_val_accuracy",
    "chosen",
]

FOLD_FIELDS = ["index", "fold", "train_accuracy", "val_accuracy"]

STUDY_FIELDS = ["seed", "C", "train_accuracy", "val_accuracy", "test_accuracy"]

BOUND_FIELDS = ["t", "alpha_norm_sq", "kappa", "M", "delta", "multiplier", "bound"]

TROTTER_FIELDS = ["s", "mean_error", "max_error", "max_bound"]


def cv_table_rows(report: CvReport) -> List[Dict[str, Any]]:
    """One row per configuration, (t, s) grids for heat maps included"""

    rows = []
    for r in report.results:
        row: Dict[str, Any] = dict(r.config._asdict())
        row.update(
            index=r.index,
            mean_train_accuracy=r.mean_train,
            std_train_accuracy=r.std_train,
            mean_val_accuracy=r.mean_val,
            std_val_accuracy=r.std_val,
            chosen=int(r.index == report.chosen_index),
        )
        rows.append(row)
    return rows


def fold_table_rows(report: CvReport) -> List[Dict[str, Any]]:
    return [
        {"index": r.index, "fold": f.fold, "train_accuracy": f.train_accuracy, "val_accuracy": f.val_accuracy}
        for r in report.results
        for f in r.folds
    ]


def bound_table_rows(reports: Sequence[BoundReport]) -> List[Dict[str, Any]]:
    return [{**bound_report_dict(b)} for b in reports]


def trotter_table_rows(rows: Sequence[TrotterRow]) -> List[Dict[str, Any]]:
    return [dict(r._asdict()) for r in rows]


def study_table_rows(report: StudyReport) -> List[Dict[str, Any]]:
    return [dict(r._asdict()) for r in report.rows]
