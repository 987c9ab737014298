"""Jacobi eigendecomposition checks, cross-validated against numpy."""

import numpy as np
import pytest

from cfslv.eigen import EigenDecomposition, symmetric_eig
from cfslv.errors import ConvergenceError


def test_diagonal_matrix_is_its_own_decomposition():
    dec = symmetric_eig(np.array([[2.0, 0.0], [0.0, 1.0]]))
    assert dec.values.tolist() == [2.0, 1.0]
    # columns are +-e1, +-e2
    assert np.allclose(np.abs(dec.vectors), np.eye(2))


def test_rank_one_ones_matrix():
    dec = symmetric_eig(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert np.allclose(dec.values, [2.0, 0.0], atol=1e-12)
    lead = dec.vectors[:, 0]
    assert np.allclose(np.abs(lead), [1.0 / np.sqrt(2.0)] * 2)


def test_zero_matrix():
    dec = symmetric_eig(np.zeros((2, 2)))
    assert dec.values.tolist() == [0.0, 0.0]


def test_rejects_asymmetric_input():
    with pytest.raises(ValueError):
        symmetric_eig(np.array([[1.0, 2.0], [1.0, 1.0]]))


def test_rejects_nonfinite_and_nonsquare():
    with pytest.raises(ValueError):
        symmetric_eig(np.array([[np.inf, 0.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        symmetric_eig(np.ones((2, 3)))


def test_sorted_descending_and_orthonormal():
    rng = np.random.default_rng(7)
    for n in (1, 2, 3, 5, 8, 12):
        m = rng.standard_normal((n, n))
        sym = 0.5 * (m + m.T)
        dec = symmetric_eig(sym)
        assert np.all(np.diff(dec.values) <= 0.0)
        assert np.allclose(dec.vectors.T @ dec.vectors, np.eye(n), atol=1e-9)
        recon = (dec.vectors * dec.values) @ dec.vectors.T
        assert np.allclose(recon, sym, atol=1e-9 * max(1.0, np.abs(sym).max()))


def test_agrees_with_numpy_eigh():
    rng = np.random.default_rng(11)
    for trial in range(50):
        n = int(rng.integers(1, 9))
        m = rng.standard_normal((n, n)) * rng.uniform(0.1, 10.0)
        sym = 0.5 * (m + m.T)
        ours = symmetric_eig(sym).values
        ref = np.linalg.eigvalsh(sym)[::-1]
        assert np.allclose(ours, ref, atol=1e-9 * max(1.0, np.abs(ref).max()))


def test_eigenvalue_scale_invariance_large_entries():
    rng = np.random.default_rng(13)
    m = rng.standard_normal((6, 6)) * 1e8
    sym = 0.5 * (m + m.T)
    dec = symmetric_eig(sym)
    ref = np.linalg.eigvalsh(sym)[::-1]
    assert np.allclose(dec.values, ref, rtol=1e-9)


def test_decomposition_type_validates_order():
    with pytest.raises(ValueError):
        EigenDecomposition(values=np.array([1.0, 2.0]), vectors=np.eye(2))


def test_decomposition_type_validates_shapes():
    with pytest.raises(ValueError):
        EigenDecomposition(values=np.array([1.0, 0.5]), vectors=np.eye(3))


def test_convergence_error_is_a_runtime_error():
    assert issubclass(ConvergenceError, RuntimeError)
