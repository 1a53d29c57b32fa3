import numpy as np
import pytest

from phasecap.errors import InvalidInput, SingularL
from phasecap.matrices import spectral_power
from phasecap.states import (
    GaussianState,
    apply_generator,
    fermi_matrix,
    fermi_symbol,
    wigner_covariance,
    wigner_eval,
)
from phasecap.symplectic import symplectic_eigenvalues

from conftest import random_state


class TestState:
    def test_standard(self):
        s = GaussianState.standard(2)
        assert s.n == 2 and s.hbar == 1.0
        assert np.allclose(s.X, np.eye(2))
        assert np.allclose(s.Y, 0)
        assert np.allclose(s.z0, 0)

    def test_validation(self):
        with pytest.raises(InvalidInput):
            GaussianState(np.eye(2), np.zeros((3, 3)))
        with pytest.raises(InvalidInput):
            GaussianState(np.eye(2), z0=[0.0, 0.0, 0.0])
        with pytest.raises(InvalidInput):
            GaussianState(np.eye(1), hbar=-1.0)

    def test_equality_is_parameter_equality(self):
        a = GaussianState([[2.0]], [[0.5]], [0.1, 0.2])
        b = GaussianState([[2.0 + 1e-12]], [[0.5]], [0.1, 0.2])
        c = GaussianState([[2.0]], [[0.5]], [0.1, 0.3])
        assert a.isclose(b)
        assert not a.isclose(c)


class TestWignerCovariance:
    def test_standard(self):
        data = wigner_covariance(GaussianState.standard(1))
        assert np.allclose(data.G, np.eye(2))
        assert np.allclose(data.S.array, np.eye(2))

    def test_squeezed(self):
        data = wigner_covariance(GaussianState([[2.0]]))
        assert np.allclose(data.G, np.diag([2.0, 0.5]))
        assert np.allclose(data.S.array, np.diag([np.sqrt(2.0), 1 / np.sqrt(2.0)]))

    def test_chirped(self):
        data = wigner_covariance(GaussianState([[1.0]], [[1.0]]))
        assert np.allclose(data.G, [[2.0, 1.0], [1.0, 1.0]])
        assert np.allclose(data.S.array, [[1.0, 0.0], [1.0, 1.0]])
        assert np.allclose(data.S.array.T @ data.S.array, data.G)

    def test_sigma_relation(self):
        s = GaussianState([[2.0]], hbar=0.5)
        data = wigner_covariance(s)
        assert np.allclose(data.Sigma, 0.25 * np.linalg.inv(data.G))

    def test_random_state_invariants(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 5))
            s = random_state(n, rng)
            data = wigner_covariance(s)
            assert abs(np.linalg.det(data.G) - 1.0) < 1e-8
            assert np.allclose(
                symplectic_eigenvalues(data.G), np.ones(n), atol=1e-8
            )

    def test_inverse_factor_is_shear_times_dilation(self, rng):
        # S^-1 = V_Y M_{X^(1/2)}; the shear factor stands left of the dilation,
        # so the lower-left block is -Y X^(-1/2), the Y on the outside
        for _ in range(20):
            n = int(rng.integers(1, 5))
            s = random_state(n, rng)
            S_inv = np.linalg.inv(wigner_covariance(s).S.array)
            Xmh = spectral_power(s.X, -0.5)
            Xh = spectral_power(s.X, 0.5)
            expected = np.block(
                [[Xmh, np.zeros((n, n))], [-s.Y @ Xmh, Xh]]
            )
            assert np.linalg.norm(S_inv - expected) < 1e-9 * np.linalg.norm(expected)


class TestWignerEval:
    def test_standard_at_origin(self):
        val = wigner_eval(GaussianState.standard(1), [0.0, 0.0])
        assert val == pytest.approx(1 / np.pi, rel=1e-12)

    def test_level_set_value(self, rng):
        for _ in range(10):
            n = int(rng.integers(1, 4))
            s = random_state(n, rng, hbar=float(rng.uniform(0.5, 2.0)))
            G = wigner_covariance(s).G
            u = rng.standard_normal(2 * n)
            u *= np.sqrt(s.hbar / (u @ G @ u))
            val = wigner_eval(s, s.z0 + u)
            expected = (np.pi * s.hbar) ** (-n) * np.exp(-1.0)
            assert val == pytest.approx(expected, rel=1e-10)

    def test_squeezed_point(self):
        val = wigner_eval(GaussianState([[2.0]]), [1.0, 0.0])
        assert val == pytest.approx(np.exp(-2.0) / np.pi, rel=1e-12)


class TestFermi:
    def test_standard_matrix(self):
        M, level = fermi_matrix(GaussianState.standard(1))
        assert np.allclose(M.array, np.eye(2))
        assert level == pytest.approx(1.0)

    def test_squeezed_matrix(self):
        M, level = fermi_matrix(GaussianState([[2.0]]))
        assert np.allclose(M.array, np.diag([4.0, 1.0]))
        assert level == pytest.approx(2.0)

    def test_chirped_matrix_equals_g(self):
        # for X = I the Fermi matrix coincides with the covariance matrix
        s = GaussianState([[1.0]], [[1.0]])
        M, _ = fermi_matrix(s)
        assert np.allclose(M.array, [[2.0, 1.0], [1.0, 1.0]])
        assert np.allclose(M.array, wigner_covariance(s).G)

    def test_symbol_center_value(self, rng):
        s = random_state(2, rng, hbar=0.7)
        assert fermi_symbol(s, s.z0) == pytest.approx(-0.7 * np.trace(s.X))

    def test_symbol_boundary_zero(self):
        s = GaussianState([[2.0]])
        # 4x^2 + p^2 = 2 on the boundary
        assert fermi_symbol(s, [np.sqrt(0.5), 0.0]) == pytest.approx(0.0, abs=1e-12)
        assert fermi_symbol(s, [0.0, np.sqrt(2.0)]) == pytest.approx(0.0, abs=1e-12)

    def test_symbol_harmonic_point(self):
        assert fermi_symbol(GaussianState.standard(1), [1.0, 1.0]) == pytest.approx(1.0)


class TestApplyGenerator:
    def test_dilation_then_trivial_phase(self):
        s = GaussianState.standard(1)
        s = apply_generator(s, "dilation", [[np.sqrt(2.0)]])
        s = apply_generator(s, "quadratic_phase", [[0.0]])
        assert s.isclose(GaussianState([[2.0]]))

    def test_quadratic_phase(self):
        s = apply_generator(GaussianState.standard(1), "quadratic_phase", [[1.0]])
        assert s.isclose(GaussianState([[1.0]], [[1.0]]))

    def test_translate_roundtrip(self, rng):
        s = random_state(2, rng)
        z1 = rng.standard_normal(4)
        back = apply_generator(apply_generator(s, "translate", z1), "translate", -z1)
        assert back.isclose(s)

    def test_singular_dilation(self):
        with pytest.raises(SingularL):
            apply_generator(GaussianState.standard(1), "dilation", [[0.0]])

    def test_unknown_kind(self):
        with pytest.raises(InvalidInput):
            apply_generator(GaussianState.standard(1), "rotate", None)

    def test_reaches_every_state(self, rng):
        # dilation by X^(1/2) then quadratic phase by Y reproduces (X, Y)
        for _ in range(20):
            n = int(rng.integers(1, 5))
            target = random_state(n, rng)
            s = GaussianState.standard(n, hbar=target.hbar)
            s = apply_generator(s, "dilation", spectral_power(target.X, 0.5))
            s = apply_generator(s, "quadratic_phase", target.Y)
            s = apply_generator(s, "translate", target.z0)
            assert s.isclose(target, tol=1e-10)
