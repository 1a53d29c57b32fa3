"""Gaussian pure-state data model in phase space.

A state is the parameter tuple (n, hbar, X, Y, z0) of the normalized Gaussian
wavefunction whose complex width matrix is X + iY (X symmetric positive
definite, Y symmetric) and whose phase-space center is z0 = (x0, p0).  Global
phases are quotiented out, so the tuple *is* the state; two states are equal
exactly when their tuples agree.

The Wigner transform of such a state is the phase-space Gaussian

    W(z) = (pi hbar)^-n exp(-G (z - z0).(z - z0) / hbar)

with the symplectic positive definite matrix

    G = [[X + Y X^-1 Y, Y X^-1], [X^-1 Y, X^-1]] = S^T S,
    S = [[X^(1/2), 0], [X^(-1/2) Y, X^(-1/2)]].

The same S factors the Fermi matrix M = [[X^2 + Y^2, Y], [Y, I]] as
S^T diag(X, X) S; the level set M (z - z0).(z - z0) = hbar Tr X is the
boundary of the state's Fermi ellipsoid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, InvariantViolation, SingularL
from .matrices import (
    PositiveDefiniteMatrix,
    SymmetricMatrix,
    as_matrix,
    spectral_power,
)
from .symplectic import SymplecticMatrix

# relative tolerance for the certified identities G = S^T S and M = S^T D S
FACTOR_TOL = 1e-9


class GaussianState:
    """Generalized coherent state with parameters (n, hbar, X, Y, z0)."""

    def __init__(self, X, Y=None, z0=None, hbar: float = 1.0):
        Xw = PositiveDefiniteMatrix(X)
        n = Xw.n
        Yw = SymmetricMatrix(np.zeros((n, n)) if Y is None else Y)
        if Yw.n != n:
            raise InvalidInput(f"Y has dimension {Yw.n}, expected {n}", "Y")
        z = np.zeros(2 * n) if z0 is None else np.asarray(z0, dtype=float)
        if z.shape != (2 * n,):
            raise InvalidInput(f"z0 has shape {z.shape}, expected ({2 * n},)", "z0")
        if not np.all(np.isfinite(z)):
            raise InvalidInput("z0 has non-finite entries", "z0")
        if not (np.isfinite(hbar) and hbar > 0):
            raise InvalidInput(f"hbar must be positive, got {hbar}", "hbar")
        z = z.copy()
        z.setflags(write=False)
        self.n = n
        self.hbar = float(hbar)
        self.X = Xw.array
        self.Y = Yw.array
        self.z0 = z

    @classmethod
    def standard(cls, n: int, hbar: float = 1.0) -> "GaussianState":
        """The standard coherent state: X = I, Y = 0, centered at the origin."""
        return cls(np.eye(n), hbar=hbar)

    def isclose(self, other: "GaussianState", tol: float = 1e-9) -> bool:
        if self.n != other.n:
            return False
        scale = 1.0 + max(
            np.linalg.norm(self.X), np.linalg.norm(self.Y), np.linalg.norm(self.z0)
        )
        return (
            abs(self.hbar - other.hbar) <= tol * (1.0 + self.hbar)
            and np.linalg.norm(self.X - other.X) <= tol * scale
            and np.linalg.norm(self.Y - other.Y) <= tol * scale
            and np.linalg.norm(self.z0 - other.z0) <= tol * scale
        )

    def __repr__(self) -> str:
        return f"GaussianState(n={self.n}, hbar={self.hbar})"


@dataclass
class WignerData:
    """Wigner covariance data of a state: G = S^T S and Sigma = (hbar/2) G^-1."""

    G: np.ndarray
    S: SymplecticMatrix
    Sigma: np.ndarray
    hbar: float


def wigner_covariance(state: GaussianState) -> WignerData:
    """Covariance matrix G, its symplectic factor S, and Sigma = (hbar/2) G^-1.

    The identities G = S^T S and det G = 1 are certified before returning.
    """
    X, Y = state.X, state.Y
    Xi = np.linalg.inv(X)
    Xh = spectral_power(X, 0.5)
    Xih = spectral_power(X, -0.5)
    zero = np.zeros_like(X)
    G = np.block([[X + Y @ Xi @ Y, Y @ Xi], [Xi @ Y, Xi]])
    G = 0.5 * (G + G.T)
    S = np.block([[Xh, zero], [Xih @ Y, Xih]])
    gdef = np.linalg.norm(G - S.T @ S) / np.linalg.norm(G)
    if gdef > FACTOR_TOL:
        raise InvariantViolation(f"G != S^T S, defect {gdef:.3e}")
    det = np.linalg.det(G)
    if abs(det - 1.0) > 1e-8:
        raise InvariantViolation(f"det G = {det} deviates from 1")
    Sigma = 0.5 * state.hbar * np.linalg.inv(G)
    Sigma = 0.5 * (Sigma + Sigma.T)
    return WignerData(G, SymplecticMatrix(S), Sigma, state.hbar)


def wigner_eval(state: GaussianState, z) -> float | np.ndarray:
    """Closed-form Wigner function (pi hbar)^-n exp(-G dz.dz / hbar) at z.

    Accepts a single 2n-vector or an array of them (last axis 2n).
    """
    zarr = np.asarray(z, dtype=float)
    single = zarr.ndim == 1
    pts = np.atleast_2d(zarr)
    if pts.shape[-1] != 2 * state.n:
        raise InvalidInput(f"z has length {pts.shape[-1]}, expected {2 * state.n}", "z")
    G = wigner_covariance(state).G
    dz = pts - state.z0
    quad = np.einsum("ij,...i,...j->...", G, dz, dz)
    vals = (np.pi * state.hbar) ** (-state.n) * np.exp(-quad / state.hbar)
    return float(vals[0]) if single else vals


def fermi_matrix(state: GaussianState) -> tuple[PositiveDefiniteMatrix, float]:
    """The Fermi matrix M = [[X^2 + Y^2, Y], [Y, I]] and level hbar Tr X.

    The factorization M = S^T diag(X, X) S with the Wigner factor S is
    certified before returning.
    """
    X, Y = state.X, state.Y
    eye = np.eye(state.n)
    M = np.block([[X @ X + Y @ Y, Y], [Y, eye]])
    M = 0.5 * (M + M.T)
    S = wigner_covariance(state).S.array
    zero = np.zeros_like(X)
    DX = np.block([[X, zero], [zero, X]])
    defect = np.linalg.norm(M - S.T @ DX @ S) / np.linalg.norm(M)
    if defect > FACTOR_TOL:
        raise InvariantViolation(f"Fermi factorization defect {defect:.3e}")
    level = state.hbar * float(np.trace(X))
    return PositiveDefiniteMatrix(M), level


def fermi_symbol(state: GaussianState, z) -> float | np.ndarray:
    """Quadratic phase-space symbol M (z - z0).(z - z0) - hbar Tr X.

    Negative inside the Fermi ellipsoid, zero exactly on its boundary.
    """
    zarr = np.asarray(z, dtype=float)
    single = zarr.ndim == 1
    pts = np.atleast_2d(zarr)
    if pts.shape[-1] != 2 * state.n:
        raise InvalidInput(f"z has length {pts.shape[-1]}, expected {2 * state.n}", "z")
    M, level = fermi_matrix(state)
    dz = pts - state.z0
    vals = np.einsum("ij,...i,...j->...", M.array, dz, dz) - level
    return float(vals[0]) if single else vals


def apply_generator(state: GaussianState, kind: str, param) -> GaussianState:
    """Parameter-level action of the elementary unitaries on a state.

    kind 'quadratic_phase' (parameter P, symmetric): multiplication by the
    quadratic phase exp(-i P x.x / 2 hbar) sends Y to Y + P and fixes X.

    kind 'dilation' (parameter L, invertible): the scaled substitution
    x -> L x sends X + iY to L^T (X + iY) L.

    kind 'translate' (parameter z1, 2n-vector): the Heisenberg-Weyl shift
    moves the center to z0 + z1; the global phase it produces is dropped.

    Every state is the image of the standard coherent state under a
    'dilation' by X^(1/2) followed by a 'quadratic_phase' by Y.
    """
    if kind == "quadratic_phase":
        P = SymmetricMatrix(param).array
        return GaussianState(state.X, state.Y + P, state.z0, state.hbar)
    if kind == "dilation":
        L = as_matrix(param)
        if abs(np.linalg.det(L)) <= 1e-12:
            raise SingularL(f"|det L| = {abs(np.linalg.det(L)):.3e}")
        return GaussianState(L.T @ state.X @ L, L.T @ state.Y @ L, state.z0, state.hbar)
    if kind == "translate":
        z1 = np.asarray(param, dtype=float)
        return GaussianState(state.X, state.Y, state.z0 + z1, state.hbar)
    raise InvalidInput(f"unknown generator kind {kind!r}", "kind")
