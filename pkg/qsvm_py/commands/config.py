from typing import Optional, Any, Dict, List, Tuple, Sequence, Union, NamedTuple
from os import PathLike
from pathlib import Path

import copy
import math
import os

import yaml

from qsvm_py.common.cache import GramCache
from qsvm_py.common.constant import CPU_NUM
from qsvm_py.qsim import EncodingSpec
from qsvm_py.kernels import ClassicalKernelParams, KernelFamilies
from qsvm_py.data import (
    Dataset,
    DatasetSchema,
    SplitPlan,
    PreparedData,
    load_csv,
    prepare_datasets,
    prepare_plan,
    load_plan,
    check_plan,
)
from qsvm_py.experiment import (
    ModelKinds,
    ModelConfig,
    QuantumGrid,
    ClassicalGrid,
    GridSpec,
    SolverOptions,
    sample_pauli_strings,
    build_kernel,
)
from qsvm_py.experiment.report import header_lines
from qsvm_py.commands.env import OUTPUT_DIR, GRAM_CACHE_NAME
from qsvm_py.commands.errors import ConfigError
from qsvm_py.errors import QsvmError

C_GRID = [0.0001, 0.001, 0.01, 0.1, 1, 10, 100, 1000]
T_GRID = [0.05, 0.1, 0.15, 0.2, 0.3, 0.5, 1.0]
S_GRID = [1, 2, 5, 10, 20]

DEFAULT_CONFIG: Dict[str, Any] = {
    "dataset": {
        "path": None,
        "label_column": "label",
        "feature_columns": None,
        "id_column": None,
        "label_map": {"1": 1, "0": -1},
        "standardize": True,
    },
    "split": {
        "seed": 0,
        "test_fraction": 0.2,
        "undersample": True,
        "undersample_seed": None,
        "folds": 5,
        "fold_seed": None,
        "plan_file": None,
    },
    "kernel": {
        "family": "quantum",
        "gamma": None,
        "degree": 3,
        "coef0": 0.0,
    },
    "encoding": {
        "n": 6,
        "t": 0.3,
        "s": 10,
        "pauli_seed": 0,
        "paulis": None,
    },
    "grid": {
        "quantum": {
            "enabled": True,
            "n": [6],
            "t": T_GRID,
            "s": S_GRID,
            "C": C_GRID,
            "pauli_seeds": [0],
        },
        "classical": [
            {"family": "linear", "C": C_GRID},
            {"family": "rbf", "C": C_GRID, "gamma": [0.0001, 0.001, 0.01, 0.1, 1]},
            {"family": "polynomial", "C": C_GRID, "degree": [2, 3]},
        ],
    },
    "model": {
        "kind": "quantum",
        "C": 1.0,
        "n": 6,
        "t": 0.3,
        "s": 10,
        "pauli_seed": 0,
        "gamma": None,
        "degree": 3,
        "coef0": 0.0,
        "from_report": None,
    },
    "bound": {
        "delta": 0.05,
        "t_values": T_GRID,
        "trotter_steps": [1, 4, 16, 64],
        "trotter_samples": 10,
    },
    "study": {
        "seeds": None,
        "num_seeds": 30,
        "base_seed": 0,
        "n": 6,
        "t": 0.3,
        "s": 10,
        "C": None,
        "baseline": True,
    },
    "synth": {
        "kind": "blobs",
        "samples": 40,
        "features": 2,
        "margin": 2.0,
        "seed": 0,
        "output": "synth.csv",
    },
    "solver": {
        "tol": 1e-6,
        "max_iter": 10**7,
        "check_psd": True,
    },
    "cache": {
        "persist": True,
        "path": None,
    },
    "workers": 1,
    "output_dir": None,
}

CLASSICAL_ENTRY_KEYS = {"family", "C", "gamma", "degree", "coef0"}

# Config sections read by each subcommand
COMMAND_SECTIONS: Dict[str, List[str]] = {
    "kernel": ["dataset", "kernel", "encoding", "cache", "workers", "output_dir"],
    "gridsearch": ["dataset", "split", "grid", "solver", "cache", "workers", "output_dir"],
    "eval": ["dataset", "split", "model", "solver", "cache", "workers", "output_dir"],
    "bound": ["dataset", "split", "model", "bound", "solver", "cache", "workers", "output_dir"],
    "study": ["dataset", "split", "study", "grid", "solver", "cache", "workers", "output_dir"],
    "synth": ["synth", "output_dir"],
}


class CliConfig(NamedTuple):
    """
    One command line invocation

    subcommand: str
    config_path: Path
    overrides: Tuple[str, ...]  # KEY=VALUE, applied after the file
    output_dir: Optional[Path] = None  # --outdir
    verbosity: int = 0
    """

    subcommand: str
    config_path: Path
    overrides: Tuple[str, ...] = ()
    output_dir: Optional[Path] = None
    verbosity: int = 0

    @property
    def base_dir(self) -> Path:
        return Path(self.config_path).expanduser().resolve().parent


# Loading


def _flatten(tree: Dict[str, Any], prefix: str = "") -> List[Tuple[str, Any]]:
    items = []
    for key, value in tree.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict) and key != "label_map":
            items.extend(_flatten(value, name + "."))
        else:
            items.append((name, value))
    return items


def config_keys(subcommand: str) -> List[Tuple[str, Any]]:
    """(dotted key, default) of every key `subcommand` consumes"""

    keys = []
    for section in COMMAND_SECTIONS[subcommand]:
        value = DEFAULT_CONFIG[section]
        if isinstance(value, dict):
            keys.extend(_flatten(value, section + "."))
        else:
            keys.append((section, value))
    return keys


def _check_keys(tree: Any, defaults: Any, path: str):
    if not isinstance(defaults, dict) or path.endswith("label_map"):
        return
    if not isinstance(tree, dict):
        raise ConfigError(f"{path or 'config'} must be a mapping, got {type(tree).__name__}")

    for key, value in tree.items():
        name = f"{path}.{key}" if path else str(key)
        if key not in defaults:
            raise ConfigError(f"unknown config key {name!r}")
        if name == "grid.classical":
            if not isinstance(value, list):
                raise ConfigError("grid.classical must be a list")
            for i, entry in enumerate(value):
                if not isinstance(entry, dict):
                    raise ConfigError(f"grid.classical[{i}] must be a mapping")
                unknown = set(entry) - CLASSICAL_ENTRY_KEYS
                if unknown:
                    raise ConfigError(f"unknown config key 'grid.classical[{i}].{sorted(unknown)[0]}'")
            continue
        _check_keys(value, defaults[key], name)


def deep_merge(base: Dict[str, Any], other: Dict[str, Any]) -> Dict[str, Any]:
    """`other` over `base`; mappings merge recursively, everything else is replaced"""

    merged = copy.deepcopy(base)
    for key, value in other.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict) and key != "label_map":
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def apply_override(config: Dict[str, Any], override: str):
    """Set a dotted key from `KEY=VALUE`, VALUE parsed as YAML"""

    key, sep, raw = override.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"override {override!r} is not KEY=VALUE")
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError as err:
        raise ConfigError(f"override {key}: unparsable value {raw!r}", cause=err)

    parts = key.split(".")
    node: Any = config
    defaults: Any = DEFAULT_CONFIG
    for i, part in enumerate(parts[:-1]):
        here = ".".join(parts[: i + 1])
        if isinstance(node, list):
            if not part.isdigit() or int(part) >= len(node):
                raise ConfigError(f"override {key}: no list entry {here!r}")
            node = node[int(part)]
            defaults = {k: None for k in CLASSICAL_ENTRY_KEYS}
            continue
        if not isinstance(node, dict) or not isinstance(defaults, dict) or part not in defaults:
            raise ConfigError(f"unknown config key {key!r}")
        node = node.setdefault(part, {})
        defaults = defaults[part]

    last = parts[-1]
    if isinstance(node, list):
        raise ConfigError(f"override {key}: cannot replace a whole list entry")
    if not isinstance(defaults, dict) or (last not in defaults and not parts[-2:-1] == ["label_map"]):
        raise ConfigError(f"unknown config key {key!r}")
    node[last] = value


def load_config(path: PathLike, overrides: Sequence[str] = ()) -> Dict[str, Any]:
    """Defaults, deep-merged with the YAML file, then the overrides"""

    path = Path(path).expanduser()
    if not path.exists():
        raise ConfigError(f"config file {path} does not exist")

    try:
        user = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as err:
        raise ConfigError(f"config file {path} is not valid YAML: {err}", cause=err)

    _check_keys(user, DEFAULT_CONFIG, "")
    config = deep_merge(DEFAULT_CONFIG, user)
    for override in overrides:
        apply_override(config, override)
    _check_keys(config, DEFAULT_CONFIG, "")
    return config


def resolve_output_dir(cli: CliConfig, config: Dict[str, Any]) -> Path:
    """--outdir, then `output_dir`, then $QSVM_OUTDIR, then ./qsvm-out"""

    if cli.output_dir is not None:
        return Path(cli.output_dir).expanduser()
    if config.get("output_dir"):
        return _resolve(cli.base_dir, config["output_dir"])
    env = os.getenv("QSVM_OUTDIR")
    if env:
        return Path(env).expanduser()
    return OUTPUT_DIR


# Typed access


def _get(config: Dict[str, Any], key: str) -> Any:
    node: Any = config
    for part in key.split("."):
        node = node[part]
    return node


def _convert(key: str, value: Any, kind, optional: bool = False):
    if value is None:
        if optional:
            return None
        raise ConfigError(f"config key {key!r} is required")
    if kind is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"config key {key!r} must be true or false, got {value!r}")
        return value
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or int(value) != value:
            raise ConfigError(f"config key {key!r} must be an integer, got {value!r}")
        return int(value)
    if kind is float and isinstance(value, bool):
        raise ConfigError(f"config key {key!r} must be a number, got {value!r}")
    try:
        return kind(value)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"config key {key!r}: {err}", cause=err)


def get_value(config: Dict[str, Any], key: str, kind=str, optional: bool = False):
    return _convert(key, _get(config, key), kind, optional)


def get_list(config: Dict[str, Any], key: str, kind=float, optional: bool = False) -> Optional[List]:
    value = _get(config, key)
    if value is None and optional:
        return None
    if not isinstance(value, list):
        value = [value]
    if not value:
        raise ConfigError(f"config key {key!r} must not be empty")
    return [_convert(f"{key}[{i}]", v, kind) for i, v in enumerate(value)]


def _resolve(base_dir: Path, path: Union[str, PathLike]) -> Path:
    path = Path(path).expanduser()
    return path if path.is_absolute() else base_dir / path


# Builders


def schema_from_config(config: Dict[str, Any]) -> DatasetSchema:
    features = get_list(config, "dataset.feature_columns", str, optional=True)
    label_map = _get(config, "dataset.label_map")
    if not isinstance(label_map, dict) or not label_map:
        raise ConfigError("dataset.label_map must be a non-empty mapping")
    return DatasetSchema(
        label_column=get_value(config, "dataset.label_column", str),
        feature_columns=tuple(features) if features is not None else None,
        id_column=get_value(config, "dataset.id_column", str, optional=True),
        label_map={str(k): _convert(f"dataset.label_map.{k}", v, int) for k, v in label_map.items()},
    )


def dataset_from_config(config: Dict[str, Any], base_dir: Path) -> Dataset:
    path = get_value(config, "dataset.path", str)
    return load_csv(_resolve(base_dir, path), schema_from_config(config))


def plan_from_config(config: Dict[str, Any], ds: Dataset, base_dir: Path) -> SplitPlan:
    """The replay file named by split.plan_file when it exists, otherwise a fresh plan"""

    plan_file = get_value(config, "split.plan_file", str, optional=True)
    if plan_file is not None:
        path = _resolve(base_dir, plan_file)
        if path.exists():
            plan = load_plan(path)
            check_plan(ds, plan)
            return plan

    return prepare_plan(
        ds,
        test_fraction=get_value(config, "split.test_fraction", float),
        seed=get_value(config, "split.seed", int),
        undersample=get_value(config, "split.undersample", bool),
        undersample_seed=get_value(config, "split.undersample_seed", int, optional=True),
        k=get_value(config, "split.folds", int),
        fold_seed=get_value(config, "split.fold_seed", int, optional=True),
    )


def _classical_grid(entry: Dict[str, Any], i: int) -> ClassicalGrid:
    key = f"grid.classical[{i}]"
    family = _convert(f"{key}.family", entry.get("family"), str)
    if family not in KernelFamilies:
        raise ConfigError(f"{key}.family must be one of {KernelFamilies}, got {family!r}")

    def axis(name: str, kind, default):
        value = entry.get(name, default)
        if not isinstance(value, list):
            value = [value]
        if not value:
            raise ConfigError(f"{key}.{name} must not be empty")
        return tuple(_convert(f"{key}.{name}", v, kind, optional=name == "gamma") for v in value)

    return ClassicalGrid(
        family=family,
        C=axis("C", float, C_GRID),
        gamma=axis("gamma", float, None),
        degree=axis("degree", int, 3),
        coef0=_convert(f"{key}.coef0", entry.get("coef0", 0.0), float),
    )


def classical_grid_from_config(config: Dict[str, Any]) -> Tuple[ClassicalGrid, ...]:
    entries = _get(config, "grid.classical") or []
    return tuple(_classical_grid(entry, i) for i, entry in enumerate(entries))


def grid_from_config(config: Dict[str, Any]) -> GridSpec:
    quantum = None
    if get_value(config, "grid.quantum.enabled", bool):
        quantum = QuantumGrid(
            n=tuple(get_list(config, "grid.quantum.n", int)),
            t=tuple(get_list(config, "grid.quantum.t", float)),
            s=tuple(get_list(config, "grid.quantum.s", int)),
            C=tuple(get_list(config, "grid.quantum.C", float)),
            pauli_seeds=tuple(get_list(config, "grid.quantum.pauli_seeds", int)),
        )
    try:
        return GridSpec(quantum=quantum, classical=classical_grid_from_config(config)).validate()
    except QsvmError as err:
        raise ConfigError(f"invalid grid: {err}", cause=err)


def model_from_report(path: Path) -> ModelConfig:
    """The chosen configuration of a grid search report"""

    try:
        report = yaml.safe_load(path.read_text(encoding="utf-8"))
        chosen = report["chosen"]["config"]
        return ModelConfig(**chosen).validate()
    except (OSError, yaml.YAMLError, KeyError, TypeError) as err:
        raise ConfigError(f"cannot read the chosen model from {path}: {err}", cause=err)


def model_from_config(config: Dict[str, Any], base_dir: Path) -> ModelConfig:
    from_report = get_value(config, "model.from_report", str, optional=True)
    if from_report is not None:
        return model_from_report(_resolve(base_dir, from_report))

    kind = get_value(config, "model.kind", str)
    if kind not in ModelKinds:
        raise ConfigError(f"model.kind must be one of {ModelKinds}, got {kind!r}")

    C = get_value(config, "model.C", float)
    if kind == "quantum":
        model = ModelConfig(
            kind="quantum",
            C=C,
            n=get_value(config, "model.n", int),
            t=get_value(config, "model.t", float),
            s=get_value(config, "model.s", int),
            pauli_seed=get_value(config, "model.pauli_seed", int),
        )
    else:
        model = ModelConfig(
            kind=kind,  # type: ignore
            C=C,
            gamma=get_value(config, "model.gamma", float, optional=True) if kind != "linear" else None,
            degree=get_value(config, "model.degree", int) if kind == "polynomial" else None,
            coef0=get_value(config, "model.coef0", float) if kind == "polynomial" else None,
        )
    try:
        return model.validate()
    except QsvmError as err:
        raise ConfigError(f"invalid model: {err}", cause=err)


def kernel_from_config(config: Dict[str, Any], d: int) -> Union[EncodingSpec, ClassicalKernelParams]:
    """The kernel section; quantum kernels take explicit encoding.paulis or sample them"""

    family = get_value(config, "kernel.family", str)
    if family == "quantum":
        paulis = get_list(config, "encoding.paulis", str, optional=True)
        n = get_value(config, "encoding.n", int)
        if paulis is None:
            paulis = list(sample_pauli_strings(d, n, get_value(config, "encoding.pauli_seed", int)))
        elif len(paulis) != d:
            raise ConfigError(f"encoding.paulis has {len(paulis)} strings, the dataset has {d} features")
        return EncodingSpec.build(
            paulis,
            t=get_value(config, "encoding.t", float),
            s=get_value(config, "encoding.s", int),
            n=n,
        )

    if family not in KernelFamilies:
        raise ConfigError(f"kernel.family must be quantum or one of {KernelFamilies}, got {family!r}")
    model = ModelConfig(
        kind=family,  # type: ignore
        C=1.0,
        gamma=get_value(config, "kernel.gamma", float, optional=True),
        degree=get_value(config, "kernel.degree", int),
        coef0=get_value(config, "kernel.coef0", float),
    )
    return build_kernel(model, d)


def solver_from_config(config: Dict[str, Any]) -> SolverOptions:
    return SolverOptions(
        tol=get_value(config, "solver.tol", float),
        max_iter=get_value(config, "solver.max_iter", int),
        check_psd=get_value(config, "solver.check_psd", bool),
    )


def workers_from_config(config: Dict[str, Any]) -> int:
    workers = get_value(config, "workers", int)
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    return min(workers, CPU_NUM * 4)


def cache_from_config(config: Dict[str, Any], outdir: Path, base_dir: Path) -> GramCache:
    """In-memory Gram cache, backed by sqlite when cache.persist is true"""

    if not get_value(config, "cache.persist", bool):
        return GramCache()
    path = get_value(config, "cache.path", str, optional=True)
    return GramCache(_resolve(base_dir, path) if path else outdir / GRAM_CACHE_NAME)


def consumed_config(config: Dict[str, Any], subcommand: str) -> Dict[str, Any]:
    """The sections of the resolved config `subcommand` reads, for output headers"""

    return {section: config[section] for section in COMMAND_SECTIONS[subcommand]}


# Command set-up


def prepare_command(cli: CliConfig) -> Tuple[Dict[str, Any], Path, List[str]]:
    """(resolved config, output directory, header comment lines) of an invocation"""

    config = load_config(cli.config_path, cli.overrides)
    outdir = resolve_output_dir(cli, config)
    header = header_lines(cli.subcommand, consumed_config(config, cli.subcommand))
    return config, outdir, header


def prepared_from_config(config: Dict[str, Any], base_dir: Path) -> Tuple[Dataset, SplitPlan, PreparedData]:
    ds = dataset_from_config(config, base_dir)
    plan = plan_from_config(config, ds, base_dir)
    prepared = prepare_datasets(ds, plan, standardize_features=get_value(config, "dataset.standardize", bool))
    return ds, plan, prepared
