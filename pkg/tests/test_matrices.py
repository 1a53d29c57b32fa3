import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phasecap.errors import NotPositiveDefinite, NotSymmetric
from phasecap.matrices import (
    HermitianMatrix,
    PositiveDefiniteMatrix,
    SymmetricMatrix,
    eig_sym,
    is_psd,
    sym_sqrt,
)

from conftest import random_spd


class TestConstruction:
    def test_symmetrizes_and_records_defect(self):
        m = SymmetricMatrix([[1.0, 2.0 + 1e-10], [2.0, 3.0]])
        assert np.array_equal(m.array, m.array.T)
        assert 0 < m.asymmetry_defect < 1e-8

    def test_rejects_large_asymmetry(self):
        with pytest.raises(NotSymmetric):
            SymmetricMatrix([[1.0, 2.0], [0.0, 3.0]])

    def test_pd_accepts_and_rejects(self):
        PositiveDefiniteMatrix([[2.0, 1.0], [1.0, 2.0]])
        with pytest.raises(NotPositiveDefinite):
            PositiveDefiniteMatrix([[1.0, 2.0], [2.0, 1.0]])  # eigenvalues -1, 3
        with pytest.raises(NotPositiveDefinite):
            PositiveDefiniteMatrix(np.zeros((2, 2)))

    def test_hermitian_accepts_and_rejects(self):
        HermitianMatrix([[1.0, 1j], [-1j, 1.0]])
        with pytest.raises(Exception):
            HermitianMatrix([[1.0, 1j], [1j, 1.0]])


class TestSymSqrt:
    def test_identity(self):
        assert np.allclose(sym_sqrt(np.eye(2)).array, np.eye(2))

    def test_diagonal(self):
        assert np.allclose(sym_sqrt(np.diag([4.0, 9.0])).array, np.diag([2.0, 3.0]))

    def test_two_by_two(self):
        M = np.array([[2.0, 1.0], [1.0, 2.0]])
        R = sym_sqrt(M).array
        assert np.allclose(R @ R, M, atol=1e-10)
        assert np.allclose(np.linalg.eigvalsh(R), [1.0, np.sqrt(3.0)])

    def test_rejects_indefinite(self):
        with pytest.raises(NotPositiveDefinite):
            sym_sqrt([[1.0, 2.0], [2.0, 1.0]])

    def test_random_roundtrip(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            M = random_spd(n, rng, lo=0.1, hi=10.0)
            R = sym_sqrt(M).array
            assert np.linalg.norm(R @ R - M) <= 1e-9 * np.linalg.norm(M)


class TestEigSym:
    def test_diagonal(self):
        w, _ = eig_sym(np.diag([3.0, 1.0]))
        assert np.allclose(w, [1.0, 3.0])

    def test_identity(self):
        w, _ = eig_sym(np.eye(3))
        assert np.allclose(w, np.ones(3))

    def test_reflection(self):
        w, _ = eig_sym([[0.0, 1.0], [1.0, 0.0]])
        assert np.allclose(w, [-1.0, 1.0])

    def test_reconstruction_random(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            A = rng.standard_normal((n, n))
            M = 0.5 * (A + A.T)
            w, V = eig_sym(M)
            assert np.linalg.norm(V @ np.diag(w) @ V.T - M) <= 1e-9 * max(
                np.linalg.norm(M), 1e-12
            )
            assert np.linalg.norm(V @ V.T - np.eye(n)) <= 1e-10 * n


class TestIsPsd:
    def test_identity(self):
        assert is_psd(np.eye(2), 1e-10)

    def test_boundary_hermitian(self):
        # eigenvalues 0 and 2
        assert is_psd(np.array([[1.0, 1j], [-1j, 1.0]]), 1e-10)

    def test_indefinite_hermitian(self):
        # eigenvalues -1 and 3
        assert not is_psd(np.array([[1.0, 2j], [-2j, 1.0]]), 1e-10)


@settings(max_examples=30, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=6),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_sym_sqrt_property(n, seed):
    rng = np.random.default_rng(seed)
    M = random_spd(n, rng, lo=0.05, hi=20.0)
    R = sym_sqrt(M).array
    assert np.allclose(R, R.T)
    assert np.linalg.norm(R @ R - M) <= 1e-9 * np.linalg.norm(M)
