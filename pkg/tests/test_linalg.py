import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from domainrdm.errors import DimensionMismatch, NonSymmetric, NotPSD
from domainrdm.linalg import commutator_norm, psd_sqrt, sym_eigen

from helpers import random_orthogonal


def test_eigen_identity():
    w, v = sym_eigen(np.eye(2))
    np.testing.assert_allclose(w, [1, 1])
    np.testing.assert_allclose(v.T @ v, np.eye(2), atol=1e-12)
    # sign convention: largest-magnitude component of each column is positive
    for col in v.T:
        assert col[np.argmax(np.abs(col))] > 0


def test_eigen_ones():
    w, v = sym_eigen([[1.0, 1.0], [1.0, 1.0]])
    np.testing.assert_allclose(w, [0, 2], atol=1e-14)
    # largest |component| ties -> lowest index is made positive
    np.testing.assert_allclose(v[:, 0], np.array([1, -1]) / np.sqrt(2), atol=1e-12)
    np.testing.assert_allclose(v[:, 1], np.array([1, 1]) / np.sqrt(2), atol=1e-12)


def test_eigen_diagonal():
    w, _ = sym_eigen(np.diag([3.0, -1.0]))
    np.testing.assert_array_equal(w, [-1.0, 3.0])


def test_eigen_rejects_nonsymmetric():
    with pytest.raises(NonSymmetric):
        sym_eigen([[1.0, 2.0], [2.0 + 1e-9, 1.0]])


def test_eigen_deterministic():
    rng = np.random.default_rng(0)
    a = rng.standard_normal((7, 7))
    a = a + a.T
    s1, s2 = sym_eigen(a), sym_eigen(a.copy())
    assert s1.eigenvalues.tobytes() == s2.eigenvalues.tobytes()
    assert s1.eigenvectors.tobytes() == s2.eigenvectors.tobytes()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_eigen_reconstruction(m, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((m, m)) * rng.uniform(0.1, 10)
    a = a + a.T
    spec = sym_eigen(a)
    v = spec.eigenvectors
    assert np.all(np.diff(spec.eigenvalues) >= 0)
    assert np.max(np.abs(v.T @ v - np.eye(m))) <= 1e-10
    assert np.max(np.abs(spec.reconstruct() - a)) <= 1e-9


def test_degenerate_subspace_projector():
    rng = np.random.default_rng(3)
    q = random_orthogonal(5, rng)
    a = (q * [1, 1, 1, 4, 4]) @ q.T
    a = 0.5 * (a + a.T)
    w, v = sym_eigen(a)
    # compare projectors onto the degenerate subspaces, not individual vectors
    np.testing.assert_allclose(v[:, :3] @ v[:, :3].T, q[:, :3] @ q[:, :3].T, atol=1e-10)
    np.testing.assert_allclose(v[:, 3:] @ v[:, 3:].T, q[:, 3:] @ q[:, 3:].T, atol=1e-10)


def test_sqrt_examples():
    np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(psd_sqrt([[1.0, 1.0], [1.0, 1.0]]),
                               np.ones((2, 2)) / np.sqrt(2), atol=1e-15)


def test_sqrt_rejects_negative():
    with pytest.raises(NotPSD) as exc:
        psd_sqrt(np.diag([1.0, -0.03]))
    assert exc.value.eigenvalue == -0.03


def test_sqrt_clamps_noise():
    r = psd_sqrt(np.diag([1.0, -1e-9]))
    np.testing.assert_allclose(r, np.diag([1.0, 0.0]), atol=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 64), st.integers(0, 2**32 - 1))
def test_sqrt_squares_back(m, seed):
    rng = np.random.default_rng(seed)
    q = random_orthogonal(m, rng)
    w = rng.uniform(0, 2, m)
    w[rng.random(m) < 0.2] = 0.0
    a = (q * w) @ q.T
    a = 0.5 * (a + a.T)
    r = psd_sqrt(a)
    assert np.max(np.abs(r - r.T)) == 0.0
    assert np.linalg.eigvalsh(r).min() >= -1e-12
    assert np.max(np.abs(r @ r - a)) <= 1e-8


def test_commutator_examples():
    assert commutator_norm(np.diag([1.0, 2.0]), np.diag([3.0, 4.0])) == 0.0
    a = np.array([[0.3, 1.2], [1.2, -0.7]])
    assert commutator_norm(np.eye(2), a) == 0.0
    # [[0,1],[1,0]] diag(1,0) - diag(1,0) [[0,1],[1,0]] = [[0,-1],[1,0]] by hand
    assert commutator_norm([[0.0, 1.0], [1.0, 0.0]], np.diag([1.0, 0.0])) == pytest.approx(np.sqrt(2), abs=1e-15)


def test_commutator_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        commutator_norm(np.eye(2), np.eye(3))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_commutator_swap_and_simultaneous_diagonal(m, seed):
    rng = np.random.default_rng(seed)
    a, b = rng.standard_normal((2, m, m))
    a, b = a + a.T, b + b.T
    assert commutator_norm(a, b) == pytest.approx(commutator_norm(b, a), rel=1e-12, abs=1e-12)
    q = random_orthogonal(m, rng)
    x = (q * rng.standard_normal(m)) @ q.T
    y = (q * rng.standard_normal(m)) @ q.T
    assert commutator_norm(x, y) <= 1e-12 * max(1.0, np.linalg.norm(x) * np.linalg.norm(y))
