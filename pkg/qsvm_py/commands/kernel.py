from typing import List
from pathlib import Path
from contextlib import nullcontext

from rich.console import Console

from qsvm_py.common.hashing import content_hash
from qsvm_py.data import fit_standardizer, standardize
from qsvm_py.kernels import gram_matrix, kernel_descriptor, write_gram_csv
from qsvm_py.utils import dump_json
from qsvm_py.commands.config import (
    CliConfig,
    prepare_command,
    dataset_from_config,
    kernel_from_config,
    cache_from_config,
    workers_from_config,
    get_value,
)
from qsvm_py.commands.display import display_kernel, display_outputs
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

GRAM_FILE = "gram.csv"


def cmd_kernel(cli: CliConfig, show_progress: bool = True) -> List[Path]:
    """Gram matrix of the whole dataset under the configured kernel

    With dataset.standardize the columns are z-scored over all rows first.
    """

    config, outdir, header = prepare_command(cli)
    ds = dataset_from_config(config, cli.base_dir)
    samples = ds.samples
    if get_value(config, "dataset.standardize", bool):
        samples = standardize(samples, fit_standardizer(ds, range(ds.size)))

    kernel = kernel_from_config(config, ds.d)
    descriptor = kernel_descriptor(kernel)
    key = content_hash(samples, descriptor)
    workers = workers_from_config(config)

    cache = cache_from_config(config, outdir, cli.base_dir)
    try:
        status = Console().status(f"Computing {ds.size}x{ds.size} Gram matrix") if show_progress else nullcontext()
        with status:
            km = gram_matrix(samples, kernel, cache=cache, max_workers=workers)
    finally:
        cache.close()

    path = outdir / GRAM_FILE
    write_gram_csv(path, km.entries, header + [f"kernel: {dump_json(descriptor)}", f"content hash: {key}"])
    logger.debug("`cmd_kernel`: wrote %s, hash: %s", path, key)

    display_kernel(km, key)
    display_outputs([path])
    return [path]
