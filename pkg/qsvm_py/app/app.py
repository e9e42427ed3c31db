from typing import Optional, Tuple, Callable
import os
import sys

# Enable UTF-8 Mode for Windows
# https://www.python.org/dev/peps/pep-0540/
if os.name == "nt":
    os.environ["PYTHONUTF8"] = "1"

from collections import OrderedDict
from functools import wraps
from pathlib import Path
from types import SimpleNamespace
import logging
import traceback

from qsvm_py import __version__
from qsvm_py.errors import QsvmError
from qsvm_py.common.progress_bar import exit_progress_bar
from qsvm_py.commands.config import CliConfig, config_keys
from qsvm_py.commands.kernel import cmd_kernel
from qsvm_py.commands.gridsearch import cmd_gridsearch
from qsvm_py.commands.evaluate import cmd_eval
from qsvm_py.commands.bound import cmd_bound
from qsvm_py.commands.study import cmd_study
from qsvm_py.commands.synth import cmd_synth
from qsvm_py.commands.log import get_logger, set_log_level, verbosity_level

import click

from rich.console import Console

logger = get_logger(__name__)

SYSTEM_ERROR_CODE = 99


def _debug() -> bool:
    return logger.getEffectiveLevel() == logging.DEBUG


def error_line(err: BaseException) -> str:
    """`qsvm-error: <code> <ErrorClass>: <message>` on a single line"""

    if isinstance(err, QsvmError):
        code = err.error_code if err.error_code is not None else SYSTEM_ERROR_CODE
        name = type(err).__name__
    else:
        code = SYSTEM_ERROR_CODE
        name = "SystemError"
    message = " ".join(str(err).split())
    return f"qsvm-error: {code} {name}: {message}"


def handle_error(func):
    """Handle command error wrapper"""

    @wraps(func)
    def wrap(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (click.exceptions.Exit, click.ClickException):
            raise
        except QsvmError as err:
            exit_progress_bar()

            logger.debug("`app`: QsvmError: %s", traceback.format_exc())

            click.echo(error_line(err), err=True)
            if _debug():
                Console(stderr=True).print_exception()
            sys.exit(1)

        except Exception as err:
            exit_progress_bar()

            logger.debug("`app`: System Error: %s", traceback.format_exc())

            click.echo(error_line(err), err=True)
            if _debug():
                Console(stderr=True).print_exception()
            sys.exit(1)

    return wrap


ALIAS = OrderedDict(
    **{
        "k": "kernel",
        "gs": "gridsearch",
        "e": "eval",
        "b": "bound",
        "st": "study",
        "sy": "synth",
    }
)


class AliasedGroup(click.Group):
    def get_command(self, ctx, cmd_name):
        # As normal command name
        rv = click.Group.get_command(self, ctx, cmd_name)
        if rv is not None:
            return rv

        # Check alias command name
        if cmd_name not in ALIAS:
            ctx.fail(f"No command: {cmd_name}")

        normal_cmd_name = ALIAS[cmd_name]
        return click.Group.get_command(self, ctx, normal_cmd_name)

    def list_commands(self, ctx):
        return self.commands


_APP_DOC = f"""QSVM-Py v{__version__}

    \b
    Quantum kernel SVM experiments driven by one YAML config file.
    Every subcommand takes CONFIG_FILE plus `--set KEY=VALUE` overrides.
    Use `QSVM-Py {{command}} --help` to list the config keys a command reads."""

_ALIAS_DOC = "Command aliases:\n\n\b\n" + "\n".join([f"{alias: >3} : {cmd}" for alias, cmd in ALIAS.items()])


def _keys_epilog(subcommand: str) -> str:
    lines = [f"{key} (default: {default!r})" for key, default in config_keys(subcommand)]
    return "Config keys:\n\n\b\n" + "\n".join(lines)


@click.group(cls=AliasedGroup, help=_APP_DOC, epilog=_ALIAS_DOC)
@click.version_option(__version__, prog_name="QSVM-Py")
@click.pass_context
def app(ctx):
    ctx.ensure_object(SimpleNamespace)


def _command_options(func):
    func = click.option("--no-progress", is_flag=True, help="Hide progress bars and spinners")(func)
    func = click.option("--verbose", "-v", count=True, help="-v INFO, -vv DEBUG logging")(func)
    func = click.option(
        "--outdir", "-o", type=click.Path(file_okay=False), default=None, help="Output directory"
    )(func)
    func = click.option(
        "--set", "-s", "overrides", multiple=True, metavar="KEY=VALUE", help="Override a config key (repeatable)"
    )(func)
    func = click.argument("config_file", type=click.Path(dir_okay=False))(func)
    return func


def _run(
    subcommand: str,
    command: Callable,
    config_file: str,
    overrides: Tuple[str, ...],
    outdir: Optional[str],
    verbose: int,
    no_progress: bool,
):
    set_log_level(verbosity_level(verbose))
    cli = CliConfig(
        subcommand=subcommand,
        config_path=Path(config_file),
        overrides=tuple(overrides),
        output_dir=Path(outdir) if outdir else None,
        verbosity=verbose,
    )
    logger.debug("`app`: %s", cli)
    command(cli, show_progress=not no_progress)


# Kernels
# {{{
@app.command(epilog=_keys_epilog("kernel"))
@_command_options
@handle_error
def kernel(config_file, overrides, outdir, verbose, no_progress):
    """Compute the Gram matrix of a dataset and write it as CSV"""

    _run("kernel", cmd_kernel, config_file, overrides, outdir, verbose, no_progress)


# }}}

# Experiments
# {{{
@app.command(epilog=_keys_epilog("gridsearch"))
@_command_options
@handle_error
def gridsearch(config_file, overrides, outdir, verbose, no_progress):
    """Grid search with stratified k-fold cross-validation"""

    _run("gridsearch", cmd_gridsearch, config_file, overrides, outdir, verbose, no_progress)


@app.command(name="eval", epilog=_keys_epilog("eval"))
@_command_options
@handle_error
def eval_(config_file, overrides, outdir, verbose, no_progress):
    """Retrain one configuration and report test metrics"""

    _run("eval", cmd_eval, config_file, overrides, outdir, verbose, no_progress)


@app.command(epilog=_keys_epilog("bound"))
@_command_options
@handle_error
def bound(config_file, overrides, outdir, verbose, no_progress):
    """Generalization bound of a trained quantum model"""

    _run("bound", cmd_bound, config_file, overrides, outdir, verbose, no_progress)


@app.command(epilog=_keys_epilog("study"))
@_command_options
@handle_error
def study(config_file, overrides, outdir, verbose, no_progress):
    """Repeat the quantum pipeline over random Pauli-string samples"""

    _run("study", cmd_study, config_file, overrides, outdir, verbose, no_progress)


# }}}

# Data
# {{{
@app.command(epilog=_keys_epilog("synth"))
@_command_options
@handle_error
def synth(config_file, overrides, outdir, verbose, no_progress):
    """Write a synthetic dataset (blobs, xor or cosine)"""

    _run("synth", cmd_synth, config_file, overrides, outdir, verbose, no_progress)


# }}}
