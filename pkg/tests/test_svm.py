import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qsvm_py.kernels import ClassicalKernelParams, KernelMatrix, gram_matrix
from qsvm_py.svm import (
    SvmModel,
    solve_dual,
    compute_bias,
    kkt_violation,
    dual_objective,
    decision_values,
    predict,
    predict_batch,
    accuracy,
    save_model,
    load_model,
)
from qsvm_py.errors import (
    SingleClassError,
    DegenerateModelError,
    ConvergenceError,
    InvalidParameterError,
    DimensionMismatchError,
    DataFormatError,
)


def project(v: np.ndarray, y: np.ndarray, C: float) -> np.ndarray:
    """Euclidean projection onto {0 <= a <= C, y . a = 0}"""

    def clipped(mu: float) -> np.ndarray:
        return np.clip(v - mu * y, 0.0, C)

    # y . clipped(mu) is nonincreasing in mu
    hi = float(np.max(np.abs(v))) + C + 1.0
    lo = -hi
    for _ in range(100):
        mid = (lo + hi) / 2
        if y @ clipped(mid) > 0:
            lo = mid
        else:
            hi = mid
    return clipped((lo + hi) / 2)


def oracle_qp(K: np.ndarray, y: np.ndarray, C: float, strong: float, iters: int = 600) -> np.ndarray:
    """Accelerated projected gradient for a strongly convex dual"""

    Q = (y[:, None] * y[None, :]) * K
    L = float(np.linalg.eigvalsh(Q)[-1])
    momentum = (math.sqrt(L) - math.sqrt(strong)) / (math.sqrt(L) + math.sqrt(strong))
    a = np.zeros_like(y)
    prev = a
    for _ in range(iters):
        z = a + momentum * (a - prev)
        prev = a
        a = project(z - (Q @ z - 1.0) / L, y, C)
    return a


def random_problem(rng, m: int, ridge: float = 0.5):
    A = rng.normal(size=(m, m))
    K = A @ A.T / m + ridge * np.eye(m)
    K = (K + K.T) / 2
    y = np.where(rng.random(m) < 0.5, 1.0, -1.0)
    y[0], y[1] = 1.0, -1.0
    return K, y


def assert_kkt(model: SvmModel, K: np.ndarray, tol: float = 1e-5):
    a = model.alphas
    y = model.labels
    C = model.C
    margin = y * (K @ (a * y) + model.bias)
    eps = 1e-8 * min(1.0, C)
    assert np.all(a >= 0.0) and np.all(a <= C)
    assert abs(a @ y) <= 1e-9 * max(1.0, C * a.size)
    for ai, mi in zip(a, margin):
        if ai <= eps:
            assert mi >= 1 - tol
        elif ai >= C - eps:
            assert mi <= 1 + tol
        else:
            assert abs(mi - 1) <= tol


def test_identity_kernel():
    model = solve_dual(np.eye(2), [1, -1], C=10.0)
    assert np.allclose(model.alphas, [1.0, 1.0], atol=1e-8)
    assert abs(model.bias) <= 1e-8
    assert model.support_indices.tolist() == [0, 1]
    assert predict(model, [1.0, 0.0]) == 1
    assert predict(model, [0.0, 1.0]) == -1


def test_tiny_penalty():
    rng = np.random.default_rng(71)
    K, y = random_problem(rng, 8)
    model = solve_dual(K, y, C=1e-12)
    assert np.all(model.alphas <= 1e-12)
    assert abs(model.alphas @ y) <= 1e-20


def test_xor_rbf():
    samples = np.array([[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]])
    y = np.array([1.0, -1.0, -1.0, 1.0])
    K = gram_matrix(samples, ClassicalKernelParams("rbf", gamma=1.0)).entries

    model = solve_dual(K, y, C=10.0)
    assert accuracy(predict_batch(model, K), y) == 1.0

    expected = 1.0 / (1.0 - 2.0 * math.exp(-4.0) + math.exp(-8.0))
    assert np.allclose(model.alphas, expected, atol=1e-5)
    assert abs(model.bias) <= 1e-6

    oracle = oracle_qp(K, y, 10.0, strong=float(np.linalg.eigvalsh(K)[0]))
    assert np.allclose(model.alphas, oracle, atol=1e-5)
    assert abs(model.bias - compute_bias(oracle, K, y, 10.0)) <= 1e-6


def test_solver_rejects():
    with pytest.raises(SingleClassError):
        solve_dual(np.eye(3), [1, 1, 1], C=1.0)
    with pytest.raises(InvalidParameterError):
        solve_dual(np.eye(2), [1, -1], C=0.0)
    with pytest.raises(InvalidParameterError):
        solve_dual(np.eye(2), [1, 2], C=1.0)
    with pytest.raises(InvalidParameterError):
        solve_dual(np.array([[1.0, 0.5], [0.0, 1.0]]), [1, -1], C=1.0)
    with pytest.raises(DimensionMismatchError):
        solve_dual(np.eye(3), [1, -1], C=1.0)


def test_solver_max_iter():
    rng = np.random.default_rng(73)
    K, y = random_problem(rng, 10)
    with pytest.raises(ConvergenceError):
        solve_dual(K, y, C=10.0, max_iter=1)


def test_bias_without_support_vectors():
    with pytest.raises(DegenerateModelError):
        compute_bias(np.zeros(2), np.eye(2), [1, -1], C=1.0)


def test_bias_from_bounded_vectors():
    # both alphas at C = 0.1: residuals 1 - 0.1 = 0.9 and -1 + 0.1 = -0.9
    b = compute_bias([0.1, 0.1], np.eye(2), [1, -1], C=0.1)
    assert abs(b) <= 1e-15


def test_random_problems_match_oracle():
    rng = np.random.default_rng(79)
    for i in range(50):
        m = int(rng.integers(2, 13))
        C = [0.1, 1.0, 10.0][i % 3]
        K, y = random_problem(rng, m)

        model = solve_dual(K, y, C=C)
        oracle = oracle_qp(K, y, C, strong=0.5)

        assert abs(dual_objective(model.alphas, K, y) - dual_objective(oracle, K, y)) <= 1e-6
        assert kkt_violation(model.alphas, K, y, C) <= 1e-6
        assert_kkt(model, K)


def test_flat_kernel_steps_to_the_box():
    # every pair has zero curvature: K_ii + K_jj - 2 K_ij = 0
    K = np.ones((6, 6))
    y = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
    model = solve_dual(K, y, C=0.5)
    assert model.iterations >= 1
    assert np.all(model.alphas >= 0.0) and np.all(model.alphas <= 0.5)
    assert abs(model.alphas @ y) <= 1e-12
    assert np.allclose(model.alphas, 0.5)
    assert dual_objective(model.alphas, K, y) == -3.0
    assert kkt_violation(model.alphas, K, y, 0.5) <= 1e-6
    assert_kkt(model, K)


def test_duplicate_points_with_opposite_labels():
    rng = np.random.default_rng(107)
    samples = rng.normal(size=(7, 2))
    samples[1] = samples[0]
    y = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0, 1.0])
    K = gram_matrix(samples, ClassicalKernelParams("rbf", gamma=0.5)).entries
    assert K[0, 0] + K[1, 1] - 2.0 * K[0, 1] == 0.0

    for C in (0.1, 1.0, 10.0):
        model = solve_dual(K, y, C=C)
        assert np.all(model.alphas >= 0.0) and np.all(model.alphas <= C)
        assert abs(model.alphas @ y) <= 1e-9 * max(1.0, C)
        assert kkt_violation(model.alphas, K, y, C) <= 1e-6
        assert_kkt(model, K)


def test_solver_is_deterministic():
    rng = np.random.default_rng(83)
    K, y = random_problem(rng, 12)
    first = solve_dual(K, y, C=1.0)
    second = solve_dual(K, y, C=1.0)
    assert np.array_equal(first.alphas, second.alphas)
    assert first.bias == second.bias
    assert first.iterations == second.iterations


def test_label_flip_symmetry():
    rng = np.random.default_rng(89)
    K, y = random_problem(rng, 10)
    model = solve_dual(K, y, C=1.0, tol=1e-10)
    flipped = solve_dual(K, -y, C=1.0, tol=1e-10)
    assert np.allclose(model.alphas, flipped.alphas, atol=1e-6)
    assert abs(model.bias + flipped.bias) <= 1e-6


def test_mirrored_problem_has_zero_bias():
    rng = np.random.default_rng(97)
    half = np.column_stack([rng.uniform(1.0, 2.0, size=6), rng.uniform(-1.0, 1.0, size=6)])
    samples = np.vstack([half, -half])
    y = np.concatenate([np.ones(6), -np.ones(6)])
    K = gram_matrix(samples, ClassicalKernelParams("linear")).entries
    model = solve_dual(K, y, C=10.0, tol=1e-11)
    assert abs(model.bias) <= 1e-8


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), C=st.sampled_from([0.1, 1.0, 10.0]))
def test_alphas_stay_feasible(seed, C):
    rng = np.random.default_rng(seed)
    K, y = random_problem(rng, int(rng.integers(2, 10)), ridge=0.1)
    model = solve_dual(K, y, C=C)
    assert np.all(model.alphas >= 0.0) and np.all(model.alphas <= C)
    assert abs(model.alphas @ y) <= 1e-9
    assert kkt_violation(model.alphas, K, y, C) <= 1e-6


def test_decision_values():
    model = SvmModel(
        alphas=np.array([0.5, 0.25, 0.0]),
        bias=-0.1,
        C=1.0,
        labels=np.array([1.0, -1.0, 1.0]),
        support_indices=np.array([0, 1]),
    )
    assert decision_values(model, np.zeros((2, 3))).tolist() == [-0.1, -0.1]

    rows = np.array([[1.0, 0.2, 0.7], [0.3, 0.9, 0.4]])
    direct = [sum(a * y * k for a, y, k in zip(model.alphas, model.labels, row)) + model.bias for row in rows]
    assert np.allclose(decision_values(model, rows), direct, atol=1e-15)
    assert predict_batch(model, rows).tolist() == [1, -1]

    # sign(0) = +1
    zero_bias = model._replace(bias=0.0)
    assert predict(zero_bias, [0.0, 0.0, 0.0]) == 1

    with pytest.raises(DimensionMismatchError):
        decision_values(model, np.zeros((1, 2)))


def test_free_support_vector_gets_own_label():
    rng = np.random.default_rng(101)
    K, y = random_problem(rng, 10)
    model = solve_dual(KernelMatrix(entries=K, kind={"kind": "test"}), y, C=10.0)
    assert model.kernel == {"kind": "test"}
    for i in model.free_indices():
        assert predict(model, K[i]) == int(y[i])


def test_accuracy():
    assert accuracy([1, -1, 1, 1], [1, 1, 1, -1]) == 0.5
    assert accuracy([], []) == 0.0
    with pytest.raises(DimensionMismatchError):
        accuracy([1], [1, -1])


def test_model_file_round_trip(tmp_path):
    rng = np.random.default_rng(103)
    samples = rng.normal(size=(6, 2))
    y = np.array([1.0, -1.0, 1.0, -1.0, 1.0, -1.0])
    km = gram_matrix(samples, ClassicalKernelParams("rbf", gamma=0.5))
    model = solve_dual(km, y, C=1.0).with_samples(samples)

    path = tmp_path / "model" / "model.txt"
    save_model(path, model, ["trained on six points"])
    assert path.read_text().splitlines()[0] == "# qsvm-model v1"

    loaded = load_model(path)
    assert np.array_equal(loaded.alphas, model.alphas)
    assert np.array_equal(loaded.labels, model.labels)
    assert np.array_equal(loaded.samples, samples)
    assert loaded.bias == model.bias
    assert loaded.C == 1.0
    assert loaded.kernel == km.kind
    assert loaded.support_indices.tolist() == model.support_indices.tolist()


def test_load_model_rejects(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text("1,1\n")
    with pytest.raises(DataFormatError):
        load_model(path)

    path.write_text("# qsvm-model v1\n# M: 2\n# C: 1\n# bias: 0\n# kernel: null\n0.5,1\n")
    with pytest.raises(DataFormatError):
        load_model(path)
