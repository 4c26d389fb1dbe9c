import numpy as np
import pytest

from dcanum.errors import DomainError, ShapeError
from dcanum.odl import lasso_objective, sparse_code


def random_dictionary(length=32, count=10, seed=0):
    rng = np.random.default_rng(seed)
    D = rng.normal(size=(length, count))
    return D / np.linalg.norm(D, axis=0)


def test_identity():
    alpha = sparse_code(np.array([1.0, 0.0]), np.eye(2), 0.1)
    assert np.allclose(alpha, [0.9, 0], atol=1e-9)


def test_signal_equals_atom():
    D = np.linalg.qr(np.random.default_rng(1).normal(size=(16, 4)))[0]
    alpha = sparse_code(D[:, 2], D, 0.1)
    assert np.allclose(alpha, [0, 0, 0.9, 0], atol=1e-6)


def test_large_lambda_gives_zero():
    D = random_dictionary()
    x = np.random.default_rng(2).normal(size=32)
    lam = np.max(np.abs(D.T @ x))
    assert np.all(sparse_code(x, D, lam) == 0)
    assert np.all(sparse_code(x, D, 2 * lam) == 0)


@pytest.mark.parametrize("lam", [0.05, 0.3, 1.0])
def test_optimality(lam):
    D = random_dictionary()
    x = np.random.default_rng(3).normal(size=32)
    alpha = sparse_code(x, D, lam, tol=1e-10)
    # objective is not worse than at zero
    assert lasso_objective(x, D, alpha, lam) \
        <= lasso_objective(x, D, np.zeros(10), lam)
    # subgradient conditions
    corr = D.T @ (x - D @ alpha)
    assert np.all(np.abs(corr) <= lam + 1e-4)
    active = alpha != 0
    assert np.allclose(corr[active], lam * np.sign(alpha[active]),
                       atol=1e-4)


def test_max_nonzero():
    D = random_dictionary()
    x = np.random.default_rng(4).normal(size=32)
    full = sparse_code(x, D, 0.05)
    assert np.count_nonzero(full) > 3
    capped = sparse_code(x, D, 0.05, max_nonzero=3)
    assert 0 < np.count_nonzero(capped) <= 3
    # the refit support is a subset of the largest coefficients
    largest = set(np.argsort(-np.abs(full))[:3])
    assert set(np.flatnonzero(capped)) <= largest


def test_precomputed_gram():
    D = random_dictionary()
    x = np.random.default_rng(5).normal(size=32)
    assert np.array_equal(sparse_code(x, D, 0.2),
                          sparse_code(x, D, 0.2, gram=D.T @ D))


def test_invalid_input():
    D = random_dictionary()
    with pytest.raises(ShapeError):
        sparse_code(np.ones(31), D, 0.1)
    with pytest.raises(DomainError):
        sparse_code(np.full(32, np.nan), D, 0.1)
    with pytest.raises(DomainError):
        sparse_code(np.ones(32), D, -0.1)


def test_soft_threshold_on_orthonormal_dictionary():
    rng = np.random.default_rng(6)
    D = np.linalg.qr(rng.normal(size=(24, 8)))[0]
    for lam in [0.1, 0.5, 1.0]:
        x = rng.normal(size=24)
        corr = D.T @ x
        expected = np.sign(corr) * np.maximum(np.abs(corr) - lam, 0)
        assert np.allclose(sparse_code(x, D, lam, tol=1e-12), expected,
                           atol=1e-6)
