"""The linear symplectic group Sp(n) and its workhorse factorizations.

Conventions, fixed once and used by every other module:

    J   = [[0, I], [-I, 0]]        standard symplectic form
    M_L = [[L^-1, 0], [0, L^T]]    block dilation, det L != 0
    V_P = [[I, 0], [-P, I]]        symplectic shear, P symmetric

A real 2n x 2n matrix S is symplectic when S^T J S = J.  These three
families generate the whole group, which is why random test matrices are
built as short words in them: group membership is then exact up to roundoff
instead of depending on an ad-hoc orthogonalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    DegenerateBlocks,
    InvalidInput,
    NotSymplectic,
    OddDimension,
    SingularL,
)
from .matrices import (
    PositiveDefiniteMatrix,
    SymmetricMatrix,
    as_matrix,
    spectral_power,
)

SYMPLECTIC_TOL = 1e-9


def symplectic_form(n: int) -> np.ndarray:
    """The 2n x 2n matrix J of the standard symplectic form."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def _even_half(A: np.ndarray, location: str | None = None) -> int:
    if A.shape[0] % 2 != 0:
        raise OddDimension(f"matrix dimension {A.shape[0]} is odd", location)
    return A.shape[0] // 2


class SymplecticCheck(NamedTuple):
    ok: bool
    defect: float


def verify_symplectic(M, tol: float = SYMPLECTIC_TOL) -> SymplecticCheck:
    """Relative defect ||M^T J M - J|| / ||J|| and its comparison against tol."""
    A = as_matrix(M)
    if np.iscomplexobj(A):
        raise InvalidInput("symplectic matrices are real")
    n = _even_half(A)
    J = symplectic_form(n)
    defect = float(np.linalg.norm(A.T @ J @ A - J) / np.linalg.norm(J))
    return SymplecticCheck(defect <= tol, defect)


class SymplecticMatrix:
    """A 2n x 2n real matrix certified symplectic on construction."""

    def __init__(self, matrix, tol: float = SYMPLECTIC_TOL):
        A = np.array(as_matrix(matrix), dtype=float)
        check = verify_symplectic(A, tol)
        if not check.ok:
            raise NotSymplectic(
                f"symplectic defect {check.defect:.3e} exceeds {tol:.1e}"
            )
        A.setflags(write=False)
        self.array = A
        self.defect = check.defect
        self.n = A.shape[0] // 2

    @property
    def A(self) -> np.ndarray:
        return self.array[: self.n, : self.n]

    @property
    def B(self) -> np.ndarray:
        return self.array[: self.n, self.n :]

    @property
    def C(self) -> np.ndarray:
        return self.array[self.n :, : self.n]

    @property
    def D(self) -> np.ndarray:
        return self.array[self.n :, self.n :]

    def inverse(self) -> "SymplecticMatrix":
        # S^-1 = -J S^T J, exact on the group
        J = symplectic_form(self.n)
        return SymplecticMatrix(-J @ self.array.T @ J, tol=max(1e-8, 10 * self.defect))


def dilation(L) -> np.ndarray:
    """The generator M_L = [[L^-1, 0], [0, L^T]] for invertible L."""
    Larr = as_matrix(L)
    if abs(np.linalg.det(Larr)) <= 1e-12:
        raise SingularL(f"|det L| = {abs(np.linalg.det(Larr)):.3e} is not invertible")
    n = Larr.shape[0]
    zero = np.zeros((n, n))
    return np.block([[np.linalg.inv(Larr), zero], [zero, Larr.T]])


def shear(P) -> np.ndarray:
    """The generator V_P = [[I, 0], [-P, I]] for symmetric P."""
    Parr = SymmetricMatrix(P).array
    n = Parr.shape[0]
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[eye, zero], [-Parr, eye]])


def standard_generators(
    n: int, L=None, P=None
) -> tuple[SymplecticMatrix, SymplecticMatrix, SymplecticMatrix]:
    """The certified triple (J, M_L, V_P) of group generators.

    L defaults to the identity, P to zero.
    """
    L = np.eye(n) if L is None else as_matrix(L)
    P = np.zeros((n, n)) if P is None else as_matrix(P)
    return (
        SymplecticMatrix(symplectic_form(n)),
        SymplecticMatrix(dilation(L)),
        SymplecticMatrix(shear(P)),
    )


@dataclass
class PreIwasawaFactors:
    """Factors of S = V_P @ M_L @ R with R = [[U, V], [-V, U]] orthogonal.

    L is symmetric positive definite and P symmetric; both are uniquely
    determined by S.  ``p_asymmetry_defect`` records how far the raw P was
    from symmetric before it was symmetrized.
    """

    P: np.ndarray
    L: np.ndarray
    U: np.ndarray
    V: np.ndarray
    p_asymmetry_defect: float
    reconstruction_defect: float

    @property
    def R(self) -> np.ndarray:
        return np.block([[self.U, self.V], [-self.V, self.U]])

    def reconstruct(self) -> np.ndarray:
        return shear(self.P) @ dilation(self.L) @ self.R


def pre_iwasawa(S) -> PreIwasawaFactors:
    """Pre-Iwasawa decomposition S = V_P M_L R of a symplectic matrix.

    With S = [[A, B], [C, D]]:

        L = (A A^T + B B^T)^(-1/2)
        P = -(C A^T + D B^T) (A A^T + B B^T)^-1
        U = L A,  V = L B

    R = [[U, V], [-V, U]] is then orthogonal and symplectic.
    """
    Sm = S if isinstance(S, SymplecticMatrix) else SymplecticMatrix(S)
    n = Sm.n
    A, B, C, D = Sm.A, Sm.B, Sm.C, Sm.D
    Q = A @ A.T + B @ B.T
    Q = 0.5 * (Q + Q.T)
    w = np.linalg.eigvalsh(Q)
    if w[0] <= 1e-12 * max(w[-1], 1.0):
        raise DegenerateBlocks(
            f"A A^T + B B^T has near-zero eigenvalue {w[0]:.3e}"
        )
    L = spectral_power(Q, -0.5)
    P_raw = -(C @ A.T + D @ B.T) @ np.linalg.inv(Q)
    scale = max(np.linalg.norm(P_raw), 1e-300)
    p_defect = float(np.linalg.norm(P_raw - P_raw.T) / scale)
    P = 0.5 * (P_raw + P_raw.T)
    U = L @ A
    V = L @ B
    factors = PreIwasawaFactors(P, L, U, V, p_defect, 0.0)
    recon = factors.reconstruct()
    factors.reconstruction_defect = float(
        np.linalg.norm(recon - Sm.array) / np.linalg.norm(Sm.array)
    )
    return factors


def symplectic_eigenvalues(M) -> np.ndarray:
    """Symplectic eigenvalues of a positive definite 2n x 2n matrix, descending.

    These are the n positive numbers lam_j such that the spectrum of J M is
    {+-i lam_j}.  Computed from the Hermitian eigenproblem of the antisymmetric
    matrix M^(1/2) J M^(1/2), which is similar to J M.
    """
    A = PositiveDefiniteMatrix(M).array
    n = _even_half(A)
    R = spectral_power(A, 0.5)
    K = R @ symplectic_form(n) @ R
    w = np.linalg.eigvalsh(1j * K)  # i K is Hermitian with spectrum {+-lam_j}
    lam = w[n:][::-1].copy()
    if lam[-1] <= 0:
        raise NotSymplectic(
            f"nonpositive symplectic eigenvalue {lam[-1]:.3e}; matrix not PD enough"
        )
    return lam


def _random_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_invertible(n: int, rng: np.random.Generator) -> np.ndarray:
    """Well-conditioned random invertible matrix (singular values in [0.6, 1.7])."""
    return (
        _random_orthogonal(n, rng)
        @ np.diag(rng.uniform(0.6, 1.7, size=n))
        @ _random_orthogonal(n, rng).T
    )


def random_symplectic(
    n: int, rng: np.random.Generator, max_factors: int = 6
) -> SymplecticMatrix:
    """Random word of length <= max_factors in the generators J, M_L, V_P."""
    S = np.eye(2 * n)
    for _ in range(int(rng.integers(1, max_factors + 1))):
        kind = int(rng.integers(3))
        if kind == 0:
            factor = symplectic_form(n)
        elif kind == 1:
            factor = dilation(random_invertible(n, rng))
        else:
            G = 0.7 * rng.standard_normal((n, n))
            factor = shear(0.5 * (G + G.T))
        S = S @ factor
    return SymplecticMatrix(S, tol=1e-8)
