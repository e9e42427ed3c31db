from typing import List, Sequence
from pathlib import Path

from rich.table import Table
from rich.box import SIMPLE
from rich.text import Text
from rich import print

from qsvm_py.kernels import KernelMatrix, min_eigenvalue
from qsvm_py.experiment import CvReport, EvalReport, BoundReport, StudyReport, TrotterRow
from qsvm_py.utils import format_percent

# Grid search tables show this many configurations, best first
TOP_CONFIGS = 10


def _fmt(value: float, digits: int = 6) -> str:
    return f"{value:.{digits}g}"


def display_kernel(km: KernelMatrix, content_hash: str):
    table = Table(box=SIMPLE, padding=0, show_edge=False)
    table.add_column("Kernel")
    table.add_column("M", justify="right")
    table.add_column("Min eigenvalue", justify="right")
    table.add_column("Content hash")
    table.add_row(str(km.kind.get("kind")), str(km.size), _fmt(min_eigenvalue(km.entries)), content_hash)
    print(table)


def display_cv_report(report: CvReport, top: int = TOP_CONFIGS):
    ranked = sorted(report.results, key=lambda r: (-r.mean_val, r.gap, r.index))[:top]

    table = Table(box=SIMPLE, padding=0, show_edge=False, title=f"{report.k}-fold cross-validation")
    table.add_column("#", justify="right")
    table.add_column("Configuration")
    table.add_column("Train", justify="right")
    table.add_column("Validation", justify="right")
    table.add_column("Gap", justify="right")
    for r in ranked:
        index = Text(str(r.index), style="bold green" if r.index == report.chosen_index else "")
        table.add_row(
            index,
            r.config.label(),
            f"{format_percent(r.mean_train)} ± {format_percent(r.std_train)}",
            f"{format_percent(r.mean_val)} ± {format_percent(r.std_val)}",
            _fmt(r.gap, 4),
        )
    print(table)
    print(f"[bold]chosen[/bold]: [{report.chosen_index}] {report.chosen.config.label()}")


def display_eval_report(report: EvalReport):
    table = Table(box=SIMPLE, padding=0, show_edge=False, title=report.config.label())
    for header in ["Accuracy", "Error rate", "Train", "AUC", "TP", "TN", "FP", "FN", "SVs"]:
        table.add_column(header, justify="right")
    table.add_row(
        format_percent(report.accuracy),
        format_percent(report.error_rate),
        format_percent(report.train_accuracy),
        "-" if report.auc is None else _fmt(report.auc, 4),
        str(report.tp),
        str(report.tn),
        str(report.fp),
        str(report.fn),
        str(report.support_vectors),
    )
    print(table)


def display_bound(report: BoundReport, curve: Sequence[BoundReport] = (), trotter: Sequence[TrotterRow] = ()):
    table = Table(box=SIMPLE, padding=0, show_edge=False, title="Generalization bound")
    for header in ["t", "|alpha|^2", "kappa", "M", "delta", "Bound"]:
        table.add_column(header, justify="right")
    for b in [report, *curve]:
        kappa = Text(_fmt(b.kappa), style="bold red" if b.kappa_negative else "")
        table.add_row(_fmt(b.t), _fmt(b.alpha_norm_sq), kappa, str(b.M), _fmt(b.delta), _fmt(b.value))
    print(table)

    if trotter:
        table = Table(box=SIMPLE, padding=0, show_edge=False, title="Trotter error")
        table.add_column("s", justify="right")
        table.add_column("Mean", justify="right")
        table.add_column("Max", justify="right")
        table.add_column("Bound", justify="right")
        for row in trotter:
            table.add_row(str(row.s), _fmt(row.mean_error), _fmt(row.max_error), _fmt(row.max_bound))
        print(table)


def display_study(report: StudyReport):
    table = Table(
        box=SIMPLE, padding=0, show_edge=False, title=f"Random Pauli strings, n={report.n} t={report.t} s={report.s}"
    )
    for header in ["Seed", "C", "Train", "Validation", "Test"]:
        table.add_column(header, justify="right")
    for row in report.rows:
        table.add_row(
            str(row.seed),
            _fmt(row.C),
            format_percent(row.train_accuracy),
            format_percent(row.val_accuracy),
            format_percent(row.test_accuracy),
        )
    print(table)

    summary = report.summary()
    if summary:
        print(
            "test accuracy: "
            f"min {format_percent(summary['min'])}, "
            f"median {format_percent(summary['median'])}, "
            f"max {format_percent(summary['max'])}"
        )
    if report.baseline is not None:
        print(f"classical baseline ({report.baseline.config.label()}): {format_percent(report.baseline.accuracy)}")


def display_outputs(paths: List[Path]):
    for path in paths:
        print(f"[italic]wrote[/italic] {path}")
