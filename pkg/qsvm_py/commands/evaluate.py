from typing import List
from pathlib import Path
from contextlib import nullcontext

from rich.console import Console

from qsvm_py.data import save_plan
from qsvm_py.svm import save_model
from qsvm_py.experiment import fit_full, score_model
from qsvm_py.experiment.report import eval_report_dict, write_yaml_report
from qsvm_py.commands.config import (
    CliConfig,
    prepare_command,
    prepared_from_config,
    model_from_config,
    solver_from_config,
    cache_from_config,
    workers_from_config,
)
from qsvm_py.commands.display import display_eval_report, display_outputs

REPORT_FILE = "eval_report.yaml"
MODEL_FILE = "model.txt"
PLAN_FILE = "split_plan.txt"


def cmd_eval(cli: CliConfig, show_progress: bool = True) -> List[Path]:
    """Retrain one configuration on the whole training set and score the test set"""

    config, outdir, header = prepare_command(cli)
    _, plan, prepared = prepared_from_config(config, cli.base_dir)
    model_config = model_from_config(config, cli.base_dir)
    solver = solver_from_config(config)
    workers = workers_from_config(config)

    cache = cache_from_config(config, outdir, cli.base_dir)
    try:
        with Console().status("Evaluating", spinner="dots") if show_progress else nullcontext():
            model, kernel, gram = fit_full(prepared, model_config, solver=solver, cache=cache, max_workers=workers)
            report = score_model(prepared, model_config, model, kernel, gram, max_workers=workers)
    finally:
        cache.close()

    paths = [outdir / REPORT_FILE, outdir / MODEL_FILE, outdir / PLAN_FILE]
    write_yaml_report(paths[0], eval_report_dict(report), header)
    save_model(paths[1], model, header)
    save_plan(paths[2], plan)

    display_eval_report(report)
    display_outputs(paths)
    return paths

