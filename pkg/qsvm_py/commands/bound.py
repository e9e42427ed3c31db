from typing import List
from pathlib import Path

from qsvm_py.common.constant import DENSE_QUBIT_LIMIT
from qsvm_py.qsim import EncodingSpec
from qsvm_py.experiment import fit_full, generalization_bound, bound_curve, trotter_study
from qsvm_py.experiment.report import (
    BOUND_FIELDS,
    TROTTER_FIELDS,
    bound_report_dict,
    bound_table_rows,
    trotter_table_rows,
    write_yaml_report,
    write_csv_table,
)
from qsvm_py.commands.config import (
    CliConfig,
    prepare_command,
    prepared_from_config,
    model_from_config,
    solver_from_config,
    cache_from_config,
    workers_from_config,
    get_value,
    get_list,
)
from qsvm_py.commands.errors import ConfigError
from qsvm_py.commands.display import display_bound, display_outputs
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

REPORT_FILE = "bound_report.yaml"
CURVE_FILE = "bound_curve.csv"
TROTTER_FILE = "trotter.csv"


def cmd_bound(cli: CliConfig, show_progress: bool = True) -> List[Path]:
    """Generalization bound of a quantum model trained on the whole training set

    Also tabulates the bound over bound.t_values with the solved alphas held
    fixed, and the Trotter state error over bound.trotter_steps.
    """

    config, outdir, header = prepare_command(cli)
    model_config = model_from_config(config, cli.base_dir)
    if not model_config.is_quantum:
        raise ConfigError(f"the bound applies to quantum models, model.kind is {model_config.kind!r}")

    _, _, prepared = prepared_from_config(config, cli.base_dir)
    delta = get_value(config, "bound.delta", float)
    t_values = get_list(config, "bound.t_values", float)
    steps = get_list(config, "bound.trotter_steps", int, optional=True) or []
    trotter_samples = get_value(config, "bound.trotter_samples", int)

    cache = cache_from_config(config, outdir, cli.base_dir)
    try:
        model, kernel, _ = fit_full(
            prepared,
            model_config,
            solver=solver_from_config(config),
            cache=cache,
            max_workers=workers_from_config(config),
        )
    finally:
        cache.close()

    assert isinstance(kernel, EncodingSpec)
    samples = prepared.train_samples
    report = generalization_bound(model.alphas, samples, kernel, delta)
    curve = bound_curve(model.alphas, samples, kernel, delta, t_values)

    trotter = []
    if steps and kernel.n <= DENSE_QUBIT_LIMIT:
        trotter = trotter_study(samples[:trotter_samples], kernel, steps)
    elif steps:
        logger.warning("`cmd_bound`: %s qubits exceed the dense limit, no Trotter table", kernel.n)

    data = bound_report_dict(report)
    data["config"] = dict(model_config.as_dict())
    data["support_vectors"] = int(model.support_indices.size)

    paths = [outdir / REPORT_FILE, outdir / CURVE_FILE]
    write_yaml_report(paths[0], data, header)
    write_csv_table(paths[1], BOUND_FIELDS, bound_table_rows(curve), header)
    if trotter:
        paths.append(outdir / TROTTER_FILE)
        write_csv_table(paths[2], TROTTER_FIELDS, trotter_table_rows(trotter), header)

    display_bound(report, curve, trotter)
    display_outputs(paths)
    return paths
