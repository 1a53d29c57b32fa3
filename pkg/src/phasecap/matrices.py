"""Dense symmetric / Hermitian matrix primitives with certified properties.

Downstream factorizations assume exact symmetry and strict positive
definiteness, so constructors symmetrize their input, record the defect they
absorbed, and reject anything outside a small acceptance band.  All tolerances
are relative to the matrix scale so the same checks are meaningful for
matrices of any magnitude.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput, NotHermitian, NotPositiveDefinite, NotSymmetric

# default relative tolerance for identity checks, overridable per call
DEFAULT_TOL = 1e-10

# largest relative asymmetry silently absorbed by construction
ASYMMETRY_TOL = 1e-8

# min/max eigenvalue ratio under which a matrix is rejected as indefinite
PD_RATIO = 1e-10


def _require_square(A: np.ndarray, location: str | None = None) -> np.ndarray:
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {A.shape}", location)
    if not np.all(np.isfinite(A)):
        raise InvalidInput("matrix has non-finite entries", location)
    return A


def as_matrix(M) -> np.ndarray:
    """Underlying array of a matrix wrapper, or a float coercion of an array-like."""
    if isinstance(M, (SymmetricMatrix, HermitianMatrix)):
        return M.array
    A = np.asarray(M)
    if not np.iscomplexobj(A):
        A = A.astype(float, copy=False)
    return _require_square(A)


class SymmetricMatrix:
    """Real symmetric matrix, stored in exactly symmetrized form.

    Construction replaces the input by (M + M^T)/2 and records the relative
    asymmetry defect; a defect above ``tol`` (default 1e-8) is an error.
    """

    def __init__(self, entries, tol: float = ASYMMETRY_TOL):
        A = as_matrix(entries)
        if np.iscomplexobj(A):
            raise NotSymmetric("complex entries; use HermitianMatrix")
        scale = np.linalg.norm(A)
        defect = float(np.linalg.norm(A - A.T) / scale) if scale > 0 else 0.0
        if defect > tol:
            raise NotSymmetric(f"asymmetry defect {defect:.3e} exceeds {tol:.1e}")
        sym = 0.5 * (A + A.T)
        sym.setflags(write=False)
        self.array = sym
        self.asymmetry_defect = defect

    @property
    def n(self) -> int:
        return self.array.shape[0]


class PositiveDefiniteMatrix(SymmetricMatrix):
    """Symmetric matrix with all eigenvalues strictly positive.

    Rejected when the smallest eigenvalue does not exceed ``PD_RATIO`` times
    the largest one.
    """

    def __init__(self, entries, tol: float = ASYMMETRY_TOL):
        super().__init__(entries, tol=tol)
        w = np.linalg.eigvalsh(self.array)
        if w[-1] <= 0 or w[0] <= PD_RATIO * w[-1]:
            raise NotPositiveDefinite(
                f"eigenvalues in [{w[0]:.3e}, {w[-1]:.3e}] are not strictly positive"
            )
        self.eigenvalues = w


class HermitianMatrix:
    """Complex matrix equal to its conjugate transpose within 1e-12 relative."""

    def __init__(self, entries, tol: float = 1e-12):
        A = np.asarray(entries, dtype=complex)
        _require_square(A)
        scale = np.linalg.norm(A)
        defect = float(np.linalg.norm(A - A.conj().T) / scale) if scale > 0 else 0.0
        if defect > tol:
            raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds {tol:.1e}")
        herm = 0.5 * (A + A.conj().T)
        herm.setflags(write=False)
        self.array = herm
        self.hermiticity_defect = defect

    @property
    def n(self) -> int:
        return self.array.shape[0]


def spectral_power(M, power: float, tol: float = PD_RATIO) -> np.ndarray:
    """M**power for symmetric positive definite M, by eigendecomposition."""
    A = SymmetricMatrix(M).array
    w, V = np.linalg.eigh(A)
    if w[-1] <= 0 or w[0] <= tol * w[-1]:
        raise NotPositiveDefinite(
            f"eigenvalues in [{w[0]:.3e}, {w[-1]:.3e}] are not strictly positive"
        )
    return (V * w**power) @ V.T


def sym_sqrt(M, tol: float = PD_RATIO) -> PositiveDefiniteMatrix:
    """Symmetric positive square root R of a positive definite M, R @ R = M."""
    return PositiveDefiniteMatrix(spectral_power(M, 0.5, tol=tol))


def eig_sym(M) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and an orthogonal eigenbasis of a symmetric M.

    Satisfies M = basis @ diag(eigenvalues) @ basis.T.
    """
    A = SymmetricMatrix(M).array
    return np.linalg.eigh(A)


def is_psd(M, tol: float = DEFAULT_TOL) -> bool:
    """Whether a Hermitian matrix is positive semidefinite.

    True iff the smallest eigenvalue is >= -tol * (1 + largest |eigenvalue|).
    """
    H = M if isinstance(M, HermitianMatrix) else HermitianMatrix(M)
    w = np.linalg.eigvalsh(H.array)
    bound = tol * (1.0 + max(abs(w[0]), abs(w[-1])))
    return bool(w[0] >= -bound)
