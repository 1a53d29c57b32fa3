import numpy as np
import pytest

from phasecap.errors import (
    DegenerateBlocks,
    NotSymplectic,
    OddDimension,
    SingularL,
)
from phasecap.symplectic import (
    SymplecticMatrix,
    dilation,
    pre_iwasawa,
    random_symplectic,
    shear,
    standard_generators,
    symplectic_eigenvalues,
    symplectic_form,
    verify_symplectic,
)

from conftest import random_spd


class TestGenerators:
    def test_trivial_parameters(self):
        J, ML, VP = standard_generators(1)
        assert np.allclose(J.array, [[0.0, 1.0], [-1.0, 0.0]])
        assert np.allclose(ML.array, np.eye(2))
        assert np.allclose(VP.array, np.eye(2))

    def test_dilation_by_two(self):
        _, ML, _ = standard_generators(1, L=[[2.0]])
        assert np.allclose(ML.array, [[0.5, 0.0], [0.0, 2.0]])

    def test_shear_by_one(self):
        _, _, VP = standard_generators(1, P=[[1.0]])
        assert np.allclose(VP.array, [[1.0, 0.0], [-1.0, 1.0]])

    def test_all_certified(self):
        rng = np.random.default_rng(3)
        for n in (1, 2, 3):
            J, ML, VP = standard_generators(
                n, L=rng.standard_normal((n, n)) + 3 * np.eye(n), P=random_spd(n, rng)
            )
            for g in (J, ML, VP):
                assert verify_symplectic(g.array).ok

    def test_singular_l(self):
        with pytest.raises(SingularL):
            dilation(np.zeros((2, 2)))


class TestVerify:
    def test_j_has_zero_defect(self):
        check = verify_symplectic(symplectic_form(2))
        assert check.ok and check.defect == 0.0

    def test_dilation_form(self):
        assert verify_symplectic(np.diag([2.0, 0.5])).ok

    def test_uniform_scaling_fails(self):
        check = verify_symplectic(np.diag([2.0, 2.0]))
        assert not check.ok
        assert check.defect == pytest.approx(3.0)

    def test_odd_dimension(self):
        with pytest.raises(OddDimension):
            verify_symplectic(np.eye(3))

    def test_constructor_rejects(self):
        with pytest.raises(NotSymplectic):
            SymplecticMatrix(np.diag([2.0, 2.0]))


class TestPreIwasawa:
    def test_on_j(self):
        f = pre_iwasawa(SymplecticMatrix(symplectic_form(1)))
        assert np.allclose(f.L, [[1.0]])
        assert np.allclose(f.P, [[0.0]])
        assert np.allclose(f.U, [[0.0]])
        assert np.allclose(f.V, [[1.0]])
        assert np.allclose(f.R, symplectic_form(1))
        assert f.reconstruction_defect < 1e-12

    def test_on_lower_shear(self):
        f = pre_iwasawa(SymplecticMatrix([[1.0, 0.0], [1.0, 1.0]]))
        assert np.allclose(f.L, [[1.0]])
        assert np.allclose(f.P, [[-1.0]])
        assert np.allclose(f.U, [[1.0]])
        assert np.allclose(f.V, [[0.0]])
        assert np.allclose(f.reconstruct(), [[1.0, 0.0], [1.0, 1.0]])

    def test_on_identity(self):
        f = pre_iwasawa(SymplecticMatrix(np.eye(4)))
        assert np.allclose(f.L, np.eye(2))
        assert np.allclose(f.P, np.zeros((2, 2)))
        assert np.allclose(f.R, np.eye(4))

    def test_random_words(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            n = int(rng.integers(1, 5))
            S = random_symplectic(n, rng)
            f = pre_iwasawa(S)
            assert f.reconstruction_defect < 1e-9
            R = f.R
            assert np.linalg.norm(R @ R.T - np.eye(2 * n)) < 1e-9 * 2 * n
            assert verify_symplectic(R, tol=1e-9).ok
            assert np.allclose(f.P, f.P.T)
            assert np.allclose(f.L, f.L.T)
            assert np.linalg.eigvalsh(f.L)[0] > 0

    def test_degenerate_blocks_guard(self):
        # a corrupted matrix only a loosened certificate admits
        bad = np.block(
            [[np.zeros((1, 1)), np.zeros((1, 1))], [np.ones((1, 1)), np.ones((1, 1))]]
        )
        with pytest.raises(DegenerateBlocks):
            pre_iwasawa(SymplecticMatrix(bad, tol=10.0))


class TestSymplecticEigenvalues:
    def test_identity(self):
        assert np.allclose(symplectic_eigenvalues(np.eye(6)), np.ones(3))

    def test_two_by_two(self):
        assert np.allclose(symplectic_eigenvalues(np.diag([4.0, 1.0])), [2.0])

    def test_gram_of_symplectic_is_all_ones(self):
        rng = np.random.default_rng(5)
        for n in (1, 2, 3, 4):
            S = random_symplectic(n, rng).array
            lam = symplectic_eigenvalues(S.T @ S)
            assert np.allclose(lam, np.ones(n), atol=1e-8)

    def test_congruence_invariance(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            n = int(rng.integers(1, 4))
            M = random_spd(2 * n, rng)
            S = random_symplectic(n, rng).array
            lam = symplectic_eigenvalues(M)
            lam_c = symplectic_eigenvalues(0.5 * (S.T @ M @ S + (S.T @ M @ S).T))
            assert np.allclose(lam, lam_c, rtol=1e-8, atol=1e-8)

    def test_descending_order(self):
        rng = np.random.default_rng(7)
        lam = symplectic_eigenvalues(random_spd(8, rng))
        assert np.all(np.diff(lam) <= 0)

    def test_odd_dimension(self):
        with pytest.raises(OddDimension):
            symplectic_eigenvalues(np.eye(3))
