from typing import Optional, List, Dict
from os import PathLike
from pathlib import Path

import math

import numpy as np

from qsvm_py.common.constant import SPLIT_FORMAT_VERSION
from qsvm_py.common.random import make_rng
from qsvm_py.data.inner import Dataset, SplitPlan, PreparedData
from qsvm_py.data.preprocess import fit_standardizer, standardize, undersample as undersample_indices
from qsvm_py.utils import format_float
from qsvm_py.errors import (
    InvalidParameterError,
    InsufficientClassError,
    DimensionMismatchError,
    DataFormatError,
)
from qsvm_py.commands.log import get_logger

logger = get_logger(__name__)

SPLIT_MAGIC = f"# qsvm-split v{SPLIT_FORMAT_VERSION}"

# Classes are always visited in this order
CLASS_ORDER = (1, -1)


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def stratified_split(ds: Dataset, test_fraction: float, seed: int) -> SplitPlan:
    """Per-class shuffled train/test allocation

    Each class sends round(count * test_fraction) members to the test set,
    rounded half up and clamped to [1, count - 1].
    """

    if not 0 < test_fraction < 1:
        raise InvalidParameterError(f"test_fraction must be in (0, 1), got {test_fraction}")

    rng = make_rng(seed)
    train: List[np.ndarray] = []
    test: List[np.ndarray] = []
    for cls in CLASS_ORDER:
        members = np.flatnonzero(ds.labels == cls)
        if members.size < 2:
            raise InsufficientClassError(f"class {cls:+d} has {members.size} members, a split needs at least 2")

        perm = rng.permutation(members)
        n_test = min(max(_round_half_up(members.size * test_fraction), 1), members.size - 1)
        test.append(perm[:n_test])
        train.append(perm[n_test:])

    return SplitPlan(
        size=ds.size,
        train=np.sort(np.concatenate(train)),
        test=np.sort(np.concatenate(test)),
        seed=seed,
        test_fraction=float(test_fraction),
    )


def stratified_folds(train_indices, labels, k: int, seed: int) -> np.ndarray:
    """Fold id of every entry of `train_indices`

    `labels` are the labels of the whole dataset. Within each class, members
    are shuffled and dealt round-robin; the second class continues where the
    first stopped so fold sizes stay balanced too.
    """

    if int(k) != k or k < 2:
        raise InvalidParameterError(f"k must be an integer >= 2, got {k}")

    train_indices = np.asarray(train_indices, dtype=np.int64)
    train_labels = np.asarray(labels)[train_indices]

    rng = make_rng(seed)
    folds = np.full(train_indices.size, -1, dtype=np.int64)
    offset = 0
    for cls in CLASS_ORDER:
        positions = np.flatnonzero(train_labels == cls)
        if positions.size < k:
            raise InsufficientClassError(f"class {cls:+d} has {positions.size} training members, {k} folds need {k}")

        perm = rng.permutation(positions)
        folds[perm] = (offset + np.arange(perm.size)) % k
        offset = (offset + perm.size) % k
    return folds


def prepare_plan(
    ds: Dataset,
    test_fraction: float = 0.2,
    seed: int = 0,
    undersample: bool = True,
    undersample_seed: Optional[int] = None,
    k: int = 5,
    fold_seed: Optional[int] = None,
) -> SplitPlan:
    """Split, then undersample the training part, then assign folds

    The test part is never resampled. `undersample_seed` and `fold_seed`
    default to `seed`.
    """

    plan = stratified_split(ds, test_fraction, seed)

    train = plan.train
    us_seed = None
    if undersample:
        us_seed = seed if undersample_seed is None else undersample_seed
        train = undersample_indices(ds, train, us_seed)

    fd_seed = seed if fold_seed is None else fold_seed
    folds = stratified_folds(train, ds.labels, k, fd_seed)

    logger.debug(
        "`prepare_plan`: train: %s, test: %s, counts: %s",
        train.size,
        plan.test.size,
        ds.class_counts(train),
    )
    return plan._replace(train=train, folds=folds, k=int(k), undersample_seed=us_seed, fold_seed=fd_seed)


def check_plan(ds: Dataset, plan: SplitPlan):
    if plan.size != ds.size:
        raise DimensionMismatchError(f"split plan was drawn for {plan.size} samples, dataset has {ds.size}")
    if np.intersect1d(plan.train, plan.test).size:
        raise InvalidParameterError("split plan train and test sets overlap")
    if plan.folds is not None and plan.folds.shape != plan.train.shape:
        raise DimensionMismatchError("split plan folds do not match its training set")


def prepare_datasets(ds: Dataset, plan: SplitPlan, standardize_features: bool = True) -> PreparedData:
    """Standardized train/test arrays, parameters fitted on the training rows only"""

    check_plan(ds, plan)
    params = fit_standardizer(ds, plan.train)
    train = ds.samples[plan.train]
    test = ds.samples[plan.test]
    if standardize_features:
        train = standardize(train, params)
        test = standardize(test, params)

    return PreparedData(
        train_samples=train,
        train_labels=ds.labels[plan.train],
        test_samples=test,
        test_labels=ds.labels[plan.test],
        params=params,
        plan=plan,
    )


def _ints(values) -> str:
    return ",".join(str(int(v)) for v in values)


def plan_text(plan: SplitPlan) -> str:
    """
    # qsvm-split v1
    # size: <M>
    # seed: <split seed>
    # test_fraction: <fraction>
    # undersample_seed: <seed or none>
    # fold_seed: <seed or none>
    # k: <folds>
    train: <indices>
    test: <indices>
    folds: <fold ids aligned with train>
    """

    def opt(v):
        return "none" if v is None else str(v)

    lines = [
        SPLIT_MAGIC,
        f"# size: {plan.size}",
        f"# seed: {plan.seed}",
        f"# test_fraction: {format_float(plan.test_fraction)}",
        f"# undersample_seed: {opt(plan.undersample_seed)}",
        f"# fold_seed: {opt(plan.fold_seed)}",
        f"# k: {plan.k}",
        f"train: {_ints(plan.train)}",
        f"test: {_ints(plan.test)}",
    ]
    if plan.folds is not None:
        lines.append(f"folds: {_ints(plan.folds)}")
    return "\n".join(lines) + "\n"


def save_plan(path: PathLike, plan: SplitPlan):
    path = Path(path)
    if not path.parent.exists():
        path.parent.mkdir(parents=True)
    path.write_text(plan_text(plan), encoding="utf-8")


def load_plan(path: PathLike) -> SplitPlan:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != SPLIT_MAGIC:
        raise DataFormatError(f"not a split plan file, expected first line {SPLIT_MAGIC!r}", row=1)

    fields: Dict[str, str] = {}
    for line in lines[1:]:
        line = line.lstrip("#").strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        fields[key.strip()] = value.strip()

    def ints(key: str) -> np.ndarray:
        value = fields.get(key, "")
        if not value:
            return np.zeros(0, dtype=np.int64)
        return np.array([int(v) for v in value.split(",")], dtype=np.int64)

    def opt(key: str) -> Optional[int]:
        value = fields.get(key, "none")
        return None if value == "none" else int(value)

    try:
        folds = ints("folds") if "folds" in fields else None
        return SplitPlan(
            size=int(fields["size"]),
            train=ints("train"),
            test=ints("test"),
            folds=folds,
            k=int(fields.get("k", "0")),
            seed=int(fields.get("seed", "0")),
            test_fraction=float(fields.get("test_fraction", "0")),
            undersample_seed=opt("undersample_seed"),
            fold_seed=opt("fold_seed"),
        )
    except (KeyError, ValueError) as err:
        raise DataFormatError(f"bad split plan field: {err}", cause=err)
