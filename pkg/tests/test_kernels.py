import numpy as np
import pytest

from qsvm_py.qsim import EncodingSpec, kernel_via_density
from qsvm_py.kernels import (
    ClassicalKernelParams,
    quantum_gram,
    quantum_cross_gram,
    classical_gram,
    gram_matrix,
    cross_gram_matrix,
    min_eigenvalue,
    write_gram_csv,
    read_gram_csv,
)
from qsvm_py.common.cache import GramCache
from qsvm_py.errors import (
    EmptyInputError,
    DimensionMismatchError,
    InvalidParameterError,
    NonFiniteError,
    DataFormatError,
)


def random_spec(rng, n: int, d: int, t: float = 0.8, s: int = 2) -> EncodingSpec:
    paulis = ["".join("IXYZ"[k] for k in rng.integers(0, 4, size=n)) for _ in range(d)]
    return EncodingSpec.build(paulis, t=t, s=s)


def test_quantum_gram_small_cases():
    spec = EncodingSpec.build(["XY", "ZX"], t=0.5, s=2)

    km = quantum_gram([[0.3, -0.2]], spec)
    assert km.entries.shape == (1, 1)
    assert km.entries[0, 0] == 1.0
    assert km.kind["kind"] == "quantum"

    km = quantum_gram([[0.3, -0.2], [0.3, -0.2]], spec)
    assert np.allclose(km.entries, np.ones((2, 2)), atol=1e-12)


def test_quantum_gram_matches_density():
    rng = np.random.default_rng(41)
    spec = random_spec(rng, 3, 4)
    samples = rng.uniform(-1, 1, size=(3, 4))
    km = quantum_gram(samples, spec)
    for i in range(3):
        for j in range(3):
            assert abs(km.entries[i, j] - kernel_via_density(samples[i], samples[j], spec)) <= 1e-10


def test_quantum_gram_rejects():
    spec = EncodingSpec.build(["X", "Z"], t=0.5, s=1)
    with pytest.raises(EmptyInputError):
        quantum_gram(np.empty((0, 2)), spec)
    with pytest.raises(DimensionMismatchError):
        quantum_gram([[0.1, 0.2], [0.3]], spec)
    with pytest.raises(DimensionMismatchError):
        quantum_gram([[0.1, 0.2, 0.3]], spec)
    with pytest.raises(NonFiniteError):
        quantum_gram([[0.1, float("nan")]], spec)


def test_quantum_gram_properties():
    rng = np.random.default_rng(43)
    for _ in range(20):
        n = int(rng.integers(1, 5))
        d = int(rng.integers(1, 6))
        m = int(rng.integers(1, 31))
        spec = random_spec(rng, n, d, t=float(rng.uniform(0.1, 2.0)), s=int(rng.integers(1, 5)))
        entries = quantum_gram(rng.normal(size=(m, d)), spec).entries
        assert np.array_equal(entries, entries.T)
        assert np.all(np.diag(entries) == 1.0)
        assert np.all((entries >= 0.0) & (entries <= 1.0))
        assert min_eigenvalue(entries) >= -1e-8


def test_quantum_gram_parallel_is_bit_identical():
    rng = np.random.default_rng(47)
    spec = random_spec(rng, 3, 5)
    samples = rng.normal(size=(25, 5))
    serial = quantum_gram(samples, spec, max_workers=1).entries
    parallel = quantum_gram(samples, spec, max_workers=4).entries
    assert np.array_equal(serial, parallel)


def test_quantum_cross_gram():
    rng = np.random.default_rng(53)
    spec = random_spec(rng, 2, 3)
    train = rng.normal(size=(6, 3))

    cross = quantum_cross_gram(train, train, spec)
    gram = quantum_gram(train, spec).entries
    assert cross.shape == (6, 6)
    off = ~np.eye(6, dtype=bool)
    assert np.allclose(cross[off], gram[off], atol=1e-15)
    assert np.allclose(np.diag(cross), 1.0, atol=1e-12)

    row = quantum_cross_gram(train, train[2:3], spec)
    assert row.shape == (1, 6)
    assert abs(row[0, 2] - 1.0) <= 1e-12

    test = rng.normal(size=(4, 3))
    cross = cross_gram_matrix(train, test, spec)
    for l in range(4):
        for i in range(6):
            assert abs(cross[l, i] - kernel_via_density(test[l], train[i], spec)) <= 1e-10

    with pytest.raises(DimensionMismatchError):
        quantum_cross_gram(train, rng.normal(size=(2, 2)), spec)


def test_classical_kernel_values():
    a = np.array([[1.0, 2.0]])
    b = np.array([[3.0, 1.0]])
    assert classical_gram(a, b, ClassicalKernelParams("linear"))[0, 0] == 5.0
    assert classical_gram(a, a, ClassicalKernelParams("rbf", gamma=0.7))[0, 0] == 1.0
    assert classical_gram(a, b, ClassicalKernelParams("rbf", gamma=0.5))[0, 0] == pytest.approx(np.exp(-2.5))

    poly = ClassicalKernelParams("polynomial", gamma=1.0, degree=2, coef0=-3.0)
    assert classical_gram(a, b, poly)[0, 0] == 4.0

    # gamma defaults to 1 / d
    assert classical_gram(a, b, ClassicalKernelParams("rbf"))[0, 0] == pytest.approx(np.exp(-2.5))


def test_classical_kernel_rejects():
    a = np.ones((2, 2))
    for params in (
        ClassicalKernelParams("rbf", gamma=-1.0),
        ClassicalKernelParams("polynomial", degree=0),
        ClassicalKernelParams("sigmoid"),
    ):
        with pytest.raises(InvalidParameterError):
            classical_gram(a, a, params)
    with pytest.raises(DimensionMismatchError):
        classical_gram(a, np.ones((1, 3)), ClassicalKernelParams("linear"))


def test_rbf_gram_is_psd():
    rng = np.random.default_rng(59)
    samples = rng.normal(size=(30, 4))
    km = gram_matrix(samples, ClassicalKernelParams("rbf", gamma=0.3))
    assert np.array_equal(km.entries, km.entries.T)
    assert np.all(np.diag(km.entries) == 1.0)
    assert np.all((km.entries > 0.0) & (km.entries <= 1.0))
    assert min_eigenvalue(km.entries) >= -1e-8


def test_gram_matrix_uses_cache(tmp_path):
    rng = np.random.default_rng(61)
    spec = random_spec(rng, 2, 3)
    samples = rng.normal(size=(8, 3))

    cache = GramCache(tmp_path / "cache.db")
    first = gram_matrix(samples, spec, cache=cache)
    assert cache.misses == 1
    second = gram_matrix(samples, spec, cache=cache)
    assert cache.hits == 1
    assert np.array_equal(first.entries, second.entries)

    other = gram_matrix(samples, spec.with_time(1.7), cache=cache)
    assert cache.misses == 2
    assert not np.array_equal(first.entries, other.entries)
    cache.close()

    reopened = GramCache(tmp_path / "cache.db")
    again = gram_matrix(samples, spec, cache=reopened)
    assert reopened.hits == 1
    assert np.array_equal(first.entries, again.entries)
    reopened.close()


def test_gram_csv_round_trip(tmp_path):
    rng = np.random.default_rng(67)
    entries = quantum_gram(rng.normal(size=(5, 2)), random_spec(rng, 2, 2)).entries
    path = tmp_path / "out" / "gram.csv"
    write_gram_csv(path, entries, ["kernel: quantum", "M: 5"])

    text = path.read_text()
    assert text.startswith("# kernel: quantum\n# M: 5\n")
    assert np.array_equal(read_gram_csv(path), entries)


def test_read_gram_csv_rejects(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,0.5\n0.5,x\n")
    with pytest.raises(DataFormatError) as exc:
        read_gram_csv(path)
    assert exc.value.row == 2

    path.write_text("1,0.5\n0.5\n")
    with pytest.raises(DataFormatError):
        read_gram_csv(path)
