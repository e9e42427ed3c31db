from typing import List
from pathlib import Path

from qsvm_py.data import SynthKinds, DatasetSchema, make_blobs, make_xor, make_cosine, write_csv
from qsvm_py.commands.config import CliConfig, prepare_command, get_value
from qsvm_py.commands.errors import ConfigError
from qsvm_py.commands.display import display_outputs


def cmd_synth(cli: CliConfig, show_progress: bool = True) -> List[Path]:
    """Write a synthetic labeled dataset in the format the pipeline reads"""

    config, outdir, header = prepare_command(cli)
    kind = get_value(config, "synth.kind", str)
    if kind not in SynthKinds:
        raise ConfigError(f"synth.kind must be one of {SynthKinds}, got {kind!r}")

    if kind == "blobs":
        ds = make_blobs(
            get_value(config, "synth.samples", int),
            get_value(config, "synth.features", int),
            get_value(config, "synth.margin", float),
            get_value(config, "synth.seed", int),
        )
    elif kind == "xor":
        ds = make_xor()
    else:
        ds = make_cosine(
            get_value(config, "synth.samples", int),
            get_value(config, "synth.features", int),
            get_value(config, "synth.seed", int),
        )

    path = outdir / get_value(config, "synth.output", str)
    write_csv(path, ds, DatasetSchema(), header)

    display_outputs([path])
    return [path]
