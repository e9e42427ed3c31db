from .inner import DEFAULT_LABEL_MAP, DatasetSchema, Dataset, StandardizationParams, SplitPlan, PreparedData
from .loader import load_csv, write_csv, dataset_csv_text
from .preprocess import fit_standardizer, standardize, apply_standardizer, undersample
from .split import (
    stratified_split,
    stratified_folds,
    prepare_plan,
    check_plan,
    prepare_datasets,
    plan_text,
    save_plan,
    load_plan,
)
from .synth import SynthKinds, make_blobs, make_xor, make_cosine


__all__ = [
    "DEFAULT_LABEL_MAP",
    "DatasetSchema",
    "Dataset",
    "StandardizationParams",
    "SplitPlan",
    "PreparedData",
    "load_csv",
    "write_csv",
    "dataset_csv_text",
    "fit_standardizer",
    "standardize",
    "apply_standardizer",
    "undersample",
    "stratified_split",
    "stratified_folds",
    "prepare_plan",
    "check_plan",
    "prepare_datasets",
    "plan_text",
    "save_plan",
    "load_plan",
    "SynthKinds",
    "make_blobs",
    "make_xor",
    "make_cosine",
]
