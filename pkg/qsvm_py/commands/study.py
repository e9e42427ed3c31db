from typing import List
from pathlib import Path

from qsvm_py.common.progress_bar import step_progress
from qsvm_py.data import save_plan
from qsvm_py.experiment import GridSpec, random_pauli_study, study_seeds
from qsvm_py.experiment.report import (
    STUDY_FIELDS,
    study_report_dict,
    study_table_rows,
    write_yaml_report,
    write_csv_table,
)
from qsvm_py.commands.config import (
    CliConfig,
    prepare_command,
    prepared_from_config,
    classical_grid_from_config,
    solver_from_config,
    cache_from_config,
    workers_from_config,
    get_value,
    get_list,
)
from qsvm_py.commands.display import display_study, display_outputs

REPORT_FILE = "study_report.yaml"
TABLE_FILE = "study_table.csv"
PLAN_FILE = "split_plan.txt"


def cmd_study(cli: CliConfig, show_progress: bool = True) -> List[Path]:
    """Repeat the quantum pipeline over many random Pauli-string samples"""

    config, outdir, header = prepare_command(cli)
    _, plan, prepared = prepared_from_config(config, cli.base_dir)

    seeds = get_list(config, "study.seeds", int, optional=True)
    if seeds is None:
        seeds = study_seeds(get_value(config, "study.num_seeds", int), get_value(config, "study.base_seed", int))
    C_values = get_list(config, "study.C", float, optional=True) or get_list(config, "grid.quantum.C", float)

    baseline = None
    if get_value(config, "study.baseline", bool):
        baseline = GridSpec(classical=classical_grid_from_config(config))

    cache = cache_from_config(config, outdir, cli.base_dir)
    try:
        with step_progress("study", len(seeds), enabled=show_progress) as advance:
            report = random_pauli_study(
                prepared,
                t=get_value(config, "study.t", float),
                s=get_value(config, "study.s", int),
                n=get_value(config, "study.n", int),
                seeds=seeds,
                C_values=C_values,
                baseline=baseline,
                solver=solver_from_config(config),
                cache=cache,
                max_workers=workers_from_config(config),
                on_row=advance,
            )
    finally:
        cache.close()

    paths = [outdir / REPORT_FILE, outdir / TABLE_FILE, outdir / PLAN_FILE]
    write_yaml_report(paths[0], study_report_dict(report), header)
    write_csv_table(paths[1], STUDY_FIELDS, study_table_rows(report), header)
    save_plan(paths[2], plan)

    display_study(report)
    display_outputs(paths)
    return paths
