import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qsvm_py.data import (
    Dataset,
    DatasetSchema,
    StandardizationParams,
    load_csv,
    write_csv,
    fit_standardizer,
    standardize,
    apply_standardizer,
    undersample,
    stratified_split,
    stratified_folds,
    prepare_plan,
    prepare_datasets,
    save_plan,
    load_plan,
    make_blobs,
    make_xor,
    make_cosine,
)
from qsvm_py.errors import (
    DataFormatError,
    EmptyInputError,
    SingleClassError,
    InsufficientClassError,
    InvalidParameterError,
    DimensionMismatchError,
)


def balanced(pos: int, neg: int, d: int = 2, seed: int = 0) -> Dataset:
    rng = np.random.default_rng(seed)
    labels = np.concatenate([np.ones(pos), -np.ones(neg)])
    return Dataset(samples=rng.normal(size=(pos + neg, d)), labels=labels)


def test_load_csv(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("# two peptides\nf1,f2,label\n1,2,1\n3,4,0\n")
    ds = load_csv(path)
    assert ds.size == 2
    assert ds.d == 2
    assert ds.labels.tolist() == [1.0, -1.0]
    assert ds.samples.tolist() == [[1.0, 2.0], [3.0, 4.0]]
    assert ds.feature_names == ("f1", "f2")


def test_load_csv_diagnostics(tmp_path):
    path = tmp_path / "data.csv"

    path.write_text("f1,f2,label\n1,2,1\n3,abc,0\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert exc.value.row == 3
    assert exc.value.column == "f2"
    assert "row 3" in str(exc.value) and "'f2'" in str(exc.value)

    path.write_text("f1,f2,label\n1,2,7\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert exc.value.column == "label"

    path.write_text("f1,f2,label\n1,2,1\n3,0\n")
    with pytest.raises(DataFormatError) as exc:
        load_csv(path)
    assert exc.value.row == 3

    path.write_text("f1,f2,class\n1,2,1\n")
    with pytest.raises(DataFormatError):
        load_csv(path)

    path.write_text("f1,f2,label\n1,inf,1\n")
    with pytest.raises(DataFormatError):
        load_csv(path)

    path.write_text("f1,f2,label\n")
    with pytest.raises(EmptyInputError):
        load_csv(path)

    with pytest.raises(DataFormatError):
        load_csv(tmp_path / "missing.csv")


def test_load_csv_wide_file(tmp_path):
    rng = np.random.default_rng(5)
    names = [f"desc{j}" for j in range(40)]
    lines = [",".join(["id"] + names + ["label"])]
    for i in range(6):
        lines.append(",".join([f"pep{i}"] + [repr(float(v)) for v in rng.normal(size=40)] + [str(i % 2)]))
    path = tmp_path / "wide.csv"
    path.write_text("\n".join(lines) + "\n")

    ds = load_csv(path, DatasetSchema(id_column="id"))
    assert ds.d == 40
    assert ds.ids == tuple(f"pep{i}" for i in range(6))
    assert ds.feature_names == tuple(names)


def test_load_csv_schema(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("a,b,c,activity\n1,2,3,hemolytic\n4,5,6,non-hemolytic\n7,8,9,1.0\n")
    schema = DatasetSchema(
        label_column="activity",
        feature_columns=("c", "a"),
        label_map={"hemolytic": 1, "non-hemolytic": -1, "1": 1},
    )
    ds = load_csv(path, schema)
    assert ds.samples.tolist() == [[3.0, 1.0], [6.0, 4.0], [9.0, 7.0]]
    assert ds.labels.tolist() == [1.0, -1.0, 1.0]

    with pytest.raises(InvalidParameterError):
        load_csv(path, DatasetSchema(label_column="activity", label_map={"hemolytic": 2}))


def test_write_csv_round_trip(tmp_path):
    ds = make_blobs(10, 3, 2.0, seed=4)
    path = tmp_path / "out" / "blobs.csv"
    write_csv(path, ds, comments=["synthetic blobs"])
    assert path.read_text().startswith("# synthetic blobs\nx1,x2,x3,label\n")

    loaded = load_csv(path)
    assert np.array_equal(loaded.samples, ds.samples)
    assert np.array_equal(loaded.labels, ds.labels)


def test_fit_standardizer():
    ds = Dataset(samples=np.array([[1.0, 5.0], [3.0, 5.0]]), labels=np.array([1.0, -1.0]))
    params = fit_standardizer(ds, [0, 1])
    assert params.means.tolist() == [2.0, 5.0]
    assert params.stds.tolist() == [1.0, 0.0]

    with pytest.raises(EmptyInputError):
        fit_standardizer(ds, [])
    with pytest.raises(DimensionMismatchError):
        fit_standardizer(ds, [0, 2])


def test_fit_standardizer_two_pass():
    rng = np.random.default_rng(7)
    ds = balanced(30, 30, d=5, seed=7)
    on = rng.choice(60, size=40, replace=False)
    params = fit_standardizer(ds, on)

    rows = ds.samples[on]
    for j in range(5):
        column = [float(v) for v in rows[:, j]]
        mean = sum(column) / len(column)
        var = sum((v - mean) ** 2 for v in column) / len(column)
        assert abs(params.means[j] - mean) <= 1e-12
        assert abs(params.stds[j] - var**0.5) <= 1e-12


def test_apply_standardizer():
    ds = balanced(20, 20, d=3, seed=9)
    ds = ds._replace(samples=np.column_stack([ds.samples, np.full(40, 4.0)]))
    params = fit_standardizer(ds, np.arange(ds.size))
    out = apply_standardizer(ds, params)
    assert np.allclose(out.samples[:, :3].mean(axis=0), 0.0, atol=1e-10)
    assert np.allclose(out.samples[:, :3].std(axis=0), 1.0, atol=1e-10)
    assert np.all(out.samples[:, 3] == 0.0)

    params = StandardizationParams(means=np.array([2.0]), stds=np.array([1.0]))
    assert standardize(np.array([[5.0]]), params).tolist() == [[3.0]]

    with pytest.raises(DimensionMismatchError):
        standardize(np.ones((2, 2)), params)


def test_undersample():
    ds = balanced(10, 10)
    assert undersample(ds, np.arange(20), seed=1).tolist() == list(range(20))

    ds = balanced(10, 6)
    kept = undersample(ds, np.arange(16), seed=1)
    assert ds.class_counts(kept) == {1: 6, -1: 6}
    assert np.all(np.diff(kept) > 0)
    assert set(range(10, 16)) <= set(kept.tolist())
    assert np.array_equal(kept, undersample(ds, np.arange(16), seed=1))

    with pytest.raises(SingleClassError):
        undersample(ds, np.arange(10), seed=1)


def test_undersample_after_split():
    ds = balanced(552, 462)
    plan = prepare_plan(ds, test_fraction=0.2, seed=3, undersample=True, k=5)
    assert ds.class_counts(plan.test) == {1: 110, -1: 92}
    assert ds.class_counts(plan.train) == {1: 370, -1: 370}


def test_stratified_split():
    ds = balanced(10, 10)
    plan = stratified_split(ds, 0.2, seed=11)
    assert ds.class_counts(plan.test) == {1: 2, -1: 2}
    assert ds.class_counts(plan.train) == {1: 8, -1: 8}
    assert sorted(plan.train.tolist() + plan.test.tolist()) == list(range(20))

    again = stratified_split(ds, 0.2, seed=11)
    assert np.array_equal(plan.train, again.train)
    assert np.array_equal(plan.test, again.test)

    ds = balanced(552, 552)
    plan = stratified_split(ds, 0.2, seed=0)
    assert ds.class_counts(plan.test) == {1: 110, -1: 110}


def test_stratified_split_rejects():
    with pytest.raises(InsufficientClassError):
        stratified_split(balanced(5, 1), 0.2, seed=0)
    for fraction in (0.0, 1.0, -0.1):
        with pytest.raises(InvalidParameterError):
            stratified_split(balanced(5, 5), fraction, seed=0)


def test_stratified_split_clamps_test_count():
    ds = balanced(2, 30)
    plan = stratified_split(ds, 0.9, seed=0)
    assert ds.class_counts(plan.test)[1] == 1
    assert ds.class_counts(plan.train)[1] == 1


def fold_counts(labels, folds, k, cls):
    return sorted(int(np.count_nonzero((folds == f) & (labels == cls))) for f in range(k))


def test_stratified_folds():
    ds = balanced(10, 10)
    folds = stratified_folds(np.arange(20), ds.labels, 5, seed=2)
    assert fold_counts(ds.labels, folds, 5, 1) == [2] * 5
    assert fold_counts(ds.labels, folds, 5, -1) == [2] * 5

    ds = balanced(11, 10)
    folds = stratified_folds(np.arange(21), ds.labels, 5, seed=2)
    assert fold_counts(ds.labels, folds, 5, 1) == [2, 2, 2, 2, 3]

    ds = balanced(100, 100)
    folds = stratified_folds(np.arange(200), ds.labels, 5, seed=2)
    assert fold_counts(ds.labels, folds, 5, 1) == [20] * 5
    assert fold_counts(ds.labels, folds, 5, -1) == [20] * 5

    with pytest.raises(InsufficientClassError):
        stratified_folds(np.arange(8), balanced(4, 4).labels, 5, seed=0)
    with pytest.raises(InvalidParameterError):
        stratified_folds(np.arange(8), balanced(4, 4).labels, 1, seed=0)


@settings(max_examples=50, deadline=None)
@given(
    pos=st.integers(5, 40),
    neg=st.integers(5, 40),
    k=st.integers(2, 5),
    seed=st.integers(0, 2**32 - 1),
)
def test_folds_partition_training_set(pos, neg, k, seed):
    ds = balanced(pos, neg)
    train = np.arange(ds.size)
    folds = stratified_folds(train, ds.labels, k, seed)

    assert sorted(set(folds.tolist())) == list(range(k))
    for cls in (1, -1):
        counts = fold_counts(ds.labels, folds, k, cls)
        assert counts[-1] - counts[0] <= 1
    sizes = [int(np.count_nonzero(folds == f)) for f in range(k)]
    assert max(sizes) - min(sizes) <= 1


def test_prepare_plan():
    ds = balanced(30, 20)
    plan = prepare_plan(ds, test_fraction=0.2, seed=5, undersample=False, k=4)
    assert np.intersect1d(plan.train, plan.test).size == 0
    assert sorted(plan.train.tolist() + plan.test.tolist()) == list(range(50))
    assert plan.folds.shape == plan.train.shape
    assert plan.undersample_seed is None
    assert plan.fold_seed == 5

    plan = prepare_plan(ds, test_fraction=0.2, seed=5, undersample=True, undersample_seed=9, k=4, fold_seed=8)
    assert ds.class_counts(plan.train) == {1: 16, -1: 16}
    assert plan.undersample_seed == 9
    assert plan.fold_seed == 8


def test_prepare_datasets_fits_on_training_rows_only():
    ds = balanced(20, 20, d=3, seed=13)
    plan = prepare_plan(ds, test_fraction=0.25, seed=1, k=3)
    prepared = prepare_datasets(ds, plan)

    changed = ds.samples.copy()
    changed[plan.test] += 100.0
    other = prepare_datasets(ds._replace(samples=changed), plan)
    assert np.array_equal(prepared.params.means, other.params.means)
    assert np.array_equal(prepared.params.stds, other.params.stds)
    assert np.array_equal(prepared.train_samples, other.train_samples)

    assert np.allclose(prepared.train_samples.mean(axis=0), 0.0, atol=1e-10)
    assert prepared.test_labels.shape == plan.test.shape

    raw = prepare_datasets(ds, plan, standardize_features=False)
    assert np.array_equal(raw.train_samples, ds.samples[plan.train])

    with pytest.raises(DimensionMismatchError):
        prepare_datasets(balanced(5, 5), plan)


def test_plan_file_round_trip(tmp_path):
    ds = balanced(12, 9)
    plan = prepare_plan(ds, test_fraction=0.2, seed=21, k=3)
    path = tmp_path / "plan" / "split_plan.txt"
    save_plan(path, plan)
    assert path.read_text().splitlines()[0] == "# qsvm-split v1"

    loaded = load_plan(path)
    assert np.array_equal(loaded.train, plan.train)
    assert np.array_equal(loaded.test, plan.test)
    assert np.array_equal(loaded.folds, plan.folds)
    assert (loaded.size, loaded.k, loaded.seed) == (plan.size, plan.k, plan.seed)
    assert loaded.test_fraction == plan.test_fraction
    assert loaded.undersample_seed == plan.undersample_seed

    path.write_text("train: 1,2\n")
    with pytest.raises(DataFormatError):
        load_plan(path)


def test_make_blobs():
    ds = make_blobs(40, 3, 2.0, seed=6)
    assert ds.size == 40 and ds.d == 3
    assert ds.labels[:4].tolist() == [1.0, -1.0, 1.0, -1.0]
    assert np.all(ds.labels * ds.samples[:, 0] >= 1.0)
    assert np.all(np.abs(ds.samples[:, 1:]) <= 0.5)
    assert np.array_equal(ds.samples, make_blobs(40, 3, 2.0, seed=6).samples)

    with pytest.raises(InvalidParameterError):
        make_blobs(40, 3, 0.0, seed=6)
    with pytest.raises(InvalidParameterError):
        make_blobs(1, 3, 1.0, seed=6)


def test_make_xor():
    ds = make_xor()
    assert ds.size == 4
    assert sorted(map(tuple, ds.samples.tolist())) == [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]
    assert np.array_equal(ds.labels, np.sign(ds.samples[:, 0] * ds.samples[:, 1]))


def test_make_cosine():
    ds = make_cosine(50, 2, seed=8)
    assert np.all(np.abs(ds.samples) <= 1.0)
    expected = np.where(np.cos(np.pi * ds.samples.sum(axis=1)) >= 0, 1.0, -1.0)
    assert np.array_equal(ds.labels, expected)
