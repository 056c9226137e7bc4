import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nlkpp.errors import ValidationError, ZeroPivot
from nlkpp.tridiag import TridiagonalSystem, thomas_batch, thomas_solve


def dense_solve(A, b):
    """Gaussian elimination with partial pivoting on a dense copy."""
    A = np.array(A, dtype=float)
    x = np.array(b, dtype=float)
    n = len(x)
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if p != k:
            A[[k, p]] = A[[p, k]]
            x[[k, p]] = x[[p, k]]
        for i in range(k + 1, n):
            m = A[i, k] / A[k, k]
            A[i, k:] -= m * A[k, k:]
            x[i] -= m * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - A[k, k + 1:] @ x[k + 1:]) / A[k, k]
    return x


def dense(sys):
    return np.diag(sys.diag) + np.diag(sys.upper, 1) + np.diag(sys.lower, -1)


def random_dominant(rng, M):
    lower = rng.uniform(-1, 1, M - 1)
    upper = rng.uniform(-1, 1, M - 1)
    off = np.zeros(M)
    off[:-1] += np.abs(upper)
    off[1:] += np.abs(lower)
    diag = (off + rng.uniform(0.05, 2, M)) * rng.choice([-1, 1], M)
    return TridiagonalSystem(lower, diag, upper, rng.normal(size=M) * 10)


def test_oracle_sanity():
    A = np.array([[0.0, 2.0], [1.0, 1.0]])
    assert np.allclose(dense_solve(A, [2.0, 3.0]), [2.0, 1.0])


def test_identity():
    r = np.array([1.0, -2.0, 3.5, 0.25])
    sys = TridiagonalSystem(np.zeros(3), np.ones(4), np.zeros(3), r)
    assert np.array_equal(thomas_solve(sys), r)


def test_two_by_two():
    sys = TridiagonalSystem(np.array([1.0]), np.array([2.0, 2.0]), np.array([1.0]), np.array([3.0, 3.0]))
    assert np.allclose(thomas_solve(sys), [1.0, 1.0], rtol=0, atol=1e-15)


def test_single_equation():
    sys = TridiagonalSystem(np.zeros(0), np.array([4.0]), np.zeros(0), np.array([2.0]))
    assert thomas_solve(sys).tolist() == [0.5]


def test_random_m8_against_dense_oracle():
    rng = np.random.default_rng(8)
    sys = random_dominant(rng, 8)
    assert np.allclose(thomas_solve(sys), dense_solve(dense(sys), sys.rhs), rtol=0, atol=1e-10)


def test_residual_bound_on_1000_systems():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        sys = random_dominant(rng, int(rng.integers(2, 65)))
        x = thomas_solve(sys)
        res = np.max(np.abs(sys.matvec(x) - sys.rhs)) / (1 + np.max(np.abs(sys.rhs)))
        worst = max(worst, res)
    assert worst <= 1e-10


@given(st.integers(2, 64), st.integers(0, 2**32 - 1))
def test_matches_dense(M, seed):
    sys = random_dominant(np.random.default_rng(seed), M)
    assert np.allclose(thomas_solve(sys), dense_solve(dense(sys), sys.rhs), rtol=1e-10, atol=1e-10)


def test_batch_equals_single_and_deterministic():
    rng = np.random.default_rng(3)
    systems = [random_dominant(rng, 12) for _ in range(5)]
    L = np.array([s.lower for s in systems])
    D = np.array([s.diag for s in systems])
    U = np.array([s.upper for s in systems])
    R = np.array([s.rhs for s in systems])
    X1 = thomas_batch(L, D, U, R)
    X2 = thomas_batch(L, D, U, R)
    assert X1.tobytes() == X2.tobytes()
    for s, x in zip(systems, X1):
        assert thomas_solve(s).tobytes() == x.tobytes()


def test_zero_pivot():
    # second pivot: 1 - 1*1 = 0
    sys = TridiagonalSystem(np.array([1.0]), np.array([1.0, 1.0]), np.array([1.0]), np.array([1.0, 2.0]))
    with pytest.raises(ZeroPivot):
        thomas_solve(sys)
    with pytest.raises(ZeroPivot):
        thomas_solve(TridiagonalSystem(np.zeros(1), np.array([0.0, 1.0]), np.zeros(1), np.ones(2)))


def test_bad_bands():
    with pytest.raises(ValidationError):
        TridiagonalSystem(np.zeros(2), np.ones(2), np.zeros(1), np.ones(2))
    with pytest.raises(ValidationError):
        TridiagonalSystem(np.zeros(1), np.array([1.0, np.inf]), np.zeros(1), np.ones(2))


def test_dominance_margin():
    sys = TridiagonalSystem(np.array([-1.0]), np.array([3.0, 2.5]), np.array([0.5]), np.zeros(2))
    assert sys.dominance_margin() == pytest.approx(1.5)
