from typing import List
from pathlib import Path

from qsvm_py.common.progress_bar import step_progress
from qsvm_py.data import save_plan
from qsvm_py.svm import save_model
from qsvm_py.experiment import cross_validate, fit_full
from qsvm_py.experiment.report import (
    CV_FIELDS,
    FOLD_FIELDS,
    cv_report_dict,
    cv_table_rows,
    fold_table_rows,
    write_yaml_report,
    write_csv_table,
)
from qsvm_py.commands.config import (
    CliConfig,
    prepare_command,
    prepared_from_config,
    grid_from_config,
    solver_from_config,
    cache_from_config,
    workers_from_config,
)
from qsvm_py.commands.display import display_cv_report, display_outputs
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

REPORT_FILE = "cv_report.yaml"
TABLE_FILE = "cv_table.csv"
FOLDS_FILE = "cv_folds.csv"
MODEL_FILE = "chosen_model.txt"
PLAN_FILE = "split_plan.txt"


def cmd_gridsearch(cli: CliConfig, show_progress: bool = True) -> List[Path]:
    """Cross-validate the grid, then retrain the chosen configuration on the whole training set"""

    config, outdir, header = prepare_command(cli)
    _, plan, prepared = prepared_from_config(config, cli.base_dir)
    grid = grid_from_config(config)
    solver = solver_from_config(config)
    workers = workers_from_config(config)

    cache = cache_from_config(config, outdir, cli.base_dir)
    try:
        with step_progress("gridsearch", len(grid.configurations()), enabled=show_progress) as advance:
            report = cross_validate(prepared, grid, solver=solver, cache=cache, max_workers=workers, on_result=advance)
        model, _, _ = fit_full(prepared, report.chosen.config, solver=solver, cache=cache, max_workers=workers)
    finally:
        cache.close()

    paths = [outdir / REPORT_FILE, outdir / TABLE_FILE, outdir / FOLDS_FILE, outdir / MODEL_FILE, outdir / PLAN_FILE]
    write_yaml_report(paths[0], cv_report_dict(report), header)
    write_csv_table(paths[1], CV_FIELDS, cv_table_rows(report), header)
    write_csv_table(paths[2], FOLD_FIELDS, fold_table_rows(report), header)
    save_model(paths[3], model, header)
    save_plan(paths[4], plan)

    display_cv_report(report)
    display_outputs(paths)
    return paths
