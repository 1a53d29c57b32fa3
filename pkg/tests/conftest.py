import numpy as np
import pytest

from phasecap import GaussianState
from phasecap.symplectic import random_symplectic


def random_orthogonal(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_spd(n, rng, lo=0.4, hi=2.5):
    """Random symmetric positive definite matrix with eigenvalues in [lo, hi]."""
    q = random_orthogonal(n, rng)
    return q @ np.diag(rng.uniform(lo, hi, size=n)) @ q.T


def random_state(n, rng, hbar=1.0):
    """Random Gaussian state with moderate conditioning."""
    X = random_spd(n, rng)
    Y = rng.standard_normal((n, n))
    Y = 0.4 * (Y + Y.T)
    z0 = rng.standard_normal(2 * n)
    return GaussianState(X, Y, z0, hbar)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


__all__ = ["random_orthogonal", "random_spd", "random_state", "random_symplectic"]
