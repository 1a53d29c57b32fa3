"""Phase-space geometry: ellipsoids, quantum blobs, Lagrangian frames,
polar duality, microlocal pairs, and the bijections between each of these
and Gaussian states.

The three correspondences implemented here (state <-> Fermi ellipsoid,
state <-> quantum blob, state <-> microlocal pair) are exact inverses of one
another at the parameter level; the round-trip property tests pin that down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InconsistentBlob,
    InvalidInput,
    NotAFermiEllipsoid,
    NotPositiveDefinite,
    OddDimension,
)
from .matrices import PositiveDefiniteMatrix, as_matrix, spectral_power, sym_sqrt
from .states import GaussianState, wigner_covariance
from .symplectic import SymplecticMatrix, dilation

# acceptance band for recognizing the image of the Fermi correspondence
FERMI_RECOGNITION_TOL = 1e-8


class Ellipsoid:
    """The set {z : M (z - center).(z - center) <= level} with M positive definite."""

    def __init__(self, matrix, center=None, level: float = 1.0):
        Mw = PositiveDefiniteMatrix(matrix)
        dim = Mw.n
        c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
        if c.shape != (dim,):
            raise InvalidInput(f"center has shape {c.shape}, expected ({dim},)", "center")
        if not (np.isfinite(level) and level > 0):
            raise InvalidInput(f"level must be positive, got {level}", "level")
        c = c.copy()
        c.setflags(write=False)
        self.matrix = Mw.array
        self.center = c
        self.level = float(level)
        self.dim = dim

    def normalized(self) -> "Ellipsoid":
        """Same set with the level rescaled to 1."""
        return Ellipsoid(self.matrix / self.level, self.center, 1.0)

    def membership(self, z) -> np.ndarray:
        """Quadratic form values M (z - center).(z - center); <= level means inside."""
        pts = np.atleast_2d(np.asarray(z, dtype=float)) - self.center
        return np.einsum("ij,...i,...j->...", self.matrix, pts, pts)

    def contains(self, z, tol: float = 1e-12) -> np.ndarray:
        return self.membership(z) <= self.level * (1.0 + tol)

    def bounding_box(self) -> tuple[np.ndarray, np.ndarray]:
        """Axis-aligned box enclosing the set (tight per coordinate)."""
        half = np.sqrt(self.level * np.diag(np.linalg.inv(self.matrix)))
        return self.center - half, self.center + half


class QuantumBlob:
    """Symplectic image S(B^{2n}(sqrt(hbar))) + center of the hbar-ball.

    The membership matrix (S S^T)^-1 is symplectic positive definite, so all
    of its symplectic eigenvalues equal 1; the blob is the minimal-uncertainty
    phase-space cell.
    """

    def __init__(self, S, center=None, hbar: float = 1.0, tol: float = 1e-8):
        self.S = S if isinstance(S, SymplecticMatrix) else SymplecticMatrix(S, tol=tol)
        dim = 2 * self.S.n
        c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
        if c.shape != (dim,):
            raise InvalidInput(f"center has shape {c.shape}, expected ({dim},)", "center")
        if not (np.isfinite(hbar) and hbar > 0):
            raise InvalidInput(f"hbar must be positive, got {hbar}", "hbar")
        c = c.copy()
        c.setflags(write=False)
        self.center = c
        self.hbar = float(hbar)
        self.n = self.S.n

    def membership_matrix(self) -> np.ndarray:
        """Q with blob = {z : Q (z - center).(z - center) <= hbar}."""
        T = self.S.array
        Q = np.linalg.inv(T @ T.T)
        return 0.5 * (Q + Q.T)

    def as_ellipsoid(self) -> Ellipsoid:
        return Ellipsoid(self.membership_matrix(), self.center, self.hbar)

    def transformed(self, S0) -> "QuantumBlob":
        S0arr = as_matrix(S0)
        return QuantumBlob(S0arr @ self.S.array, S0arr @ self.center, self.hbar)


class LagrangianFrame:
    """A symplectic matrix viewed as the pair of transversal Lagrangian planes
    (S(l_X), S(l_P)), images of the coordinate x- and p-planes."""

    def __init__(self, S):
        self.S = S if isinstance(S, SymplecticMatrix) else SymplecticMatrix(S, tol=1e-8)
        self.n = self.S.n

    def plane_basis(self, side: str) -> np.ndarray:
        """Columns spanning S(l_X) for side 'x' or S(l_P) for side 'p'."""
        if side == "x":
            return self.S.array[:, : self.n]
        if side == "p":
            return self.S.array[:, self.n :]
        raise InvalidInput(f"side must be 'x' or 'p', got {side!r}", "side")


@dataclass
class CarriedEllipsoid:
    """Rank-n ellipsoid S({(x, 0) : shape x.x <= hbar}) carried by a Lagrangian
    plane (side 'x'), or the analogue on the p-plane (side 'p').

    Stored structurally (frame + shape + side) because the ambient quadric of
    a rank-deficient body has no well-conditioned 2n x 2n representation.
    """

    frame: LagrangianFrame
    shape: np.ndarray
    side: str
    hbar: float

    def span_basis(self) -> np.ndarray:
        return self.frame.plane_basis(self.side)

    def points(self, count: int) -> np.ndarray:
        """Boundary sample points in ambient phase-space coordinates."""
        n = self.frame.n
        if n != 1:
            raise InvalidInput("boundary sampling implemented for n = 1 only")
        r = float(np.sqrt(self.hbar / self.shape[0, 0]))
        u = np.array([[-r], [r]])
        lifted = np.zeros((2, 2))
        col = 0 if self.side == "x" else 1
        lifted[:, col] = u[:, 0]
        return lifted @ self.frame.S.array.T


class MicrolocalPair:
    """Pair (X_l, X_l'^hbar) = S(X, X^hbar) with X = {x : A x.x <= hbar}.

    The second member is by construction the Lagrangian polar dual of the
    first with respect to the frame's two planes, so only the frame, the
    shape A, hbar, and the center need storing.
    """

    def __init__(self, frame, A, hbar: float = 1.0, center=None):
        self.frame = frame if isinstance(frame, LagrangianFrame) else LagrangianFrame(frame)
        Aw = PositiveDefiniteMatrix(A)
        if Aw.n != self.frame.n:
            raise InvalidInput(
                f"shape has dimension {Aw.n}, frame expects {self.frame.n}", "A"
            )
        dim = 2 * self.frame.n
        c = np.zeros(dim) if center is None else np.asarray(center, dtype=float)
        if c.shape != (dim,):
            raise InvalidInput(f"center has shape {c.shape}, expected ({dim},)", "center")
        if not (np.isfinite(hbar) and hbar > 0):
            raise InvalidInput(f"hbar must be positive, got {hbar}", "hbar")
        c = c.copy()
        c.setflags(write=False)
        self.A = Aw.array
        self.hbar = float(hbar)
        self.center = c
        self.n = self.frame.n

    def carried(self) -> tuple[CarriedEllipsoid, CarriedEllipsoid]:
        """The two carried bodies (primal on the x-side, dual on the p-side)."""
        return (
            CarriedEllipsoid(self.frame, self.A, "x", self.hbar),
            CarriedEllipsoid(self.frame, np.linalg.inv(self.A), "p", self.hbar),
        )

    def transformed(self, S0) -> "MicrolocalPair":
        S0arr = as_matrix(S0)
        return MicrolocalPair(
            S0arr @ self.frame.S.array, self.A, self.hbar, S0arr @ self.center
        )


def blob_from_state(state: GaussianState) -> QuantumBlob:
    """Quantum blob of a state: carrier S^-1 (S the Wigner factor), center z0.

    As a set it equals the covariance ellipsoid {G (z-z0).(z-z0) <= hbar}.
    """
    S = wigner_covariance(state).S
    return QuantumBlob(S.inverse(), state.z0, state.hbar)


def state_from_blob(blob: QuantumBlob) -> GaussianState:
    """Inverse of blob_from_state: recover (X, Y) from the blob's set.

    With G = (T T^T)^-1 for the blob carrier T, the blocks give X = G22^-1
    and Y = G22^-1 G21.  Carriers with the same T T^T give the same state, so
    the map is well defined on blobs (the right rotation factor drops out).
    """
    T = blob.S.array
    n = blob.n
    G = np.linalg.inv(T @ T.T)
    G = 0.5 * (G + G.T)
    G21 = G[n:, :n]
    G22 = G[n:, n:]
    X = np.linalg.inv(G22)
    X = 0.5 * (X + X.T)
    Y_raw = X @ G21
    scale = max(np.linalg.norm(Y_raw), 1.0)
    defect = float(np.linalg.norm(Y_raw - Y_raw.T) / scale)
    if defect > 1e-8:
        raise InconsistentBlob(
            f"recovered Y has asymmetry defect {defect:.3e}; carrier is not a blob"
        )
    Y = 0.5 * (Y_raw + Y_raw.T)
    return GaussianState(X, Y, blob.center, blob.hbar)


def fermi_from_state(state: GaussianState) -> Ellipsoid:
    """Fermi ellipsoid {M (z - z0).(z - z0) <= hbar Tr X} of a state."""
    from .states import fermi_matrix

    M, level = fermi_matrix(state)
    return Ellipsoid(M.array, state.z0, level)


def state_from_fermi(e: Ellipsoid, hbar: float = 1.0) -> GaussianState:
    """Inverse of fermi_from_state.

    The input is rescaled so its lower-right block is the identity; the blocks
    then give Y = M12 and X = sqrt(M11 - Y^2), and the level must equal
    hbar Tr X.  Each recognition failure is reported separately.
    """
    M, c = e.matrix, e.level
    if e.dim % 2 != 0:
        raise OddDimension(f"ellipsoid dimension {e.dim} is odd")
    n = e.dim // 2
    M22 = M[n:, n:]
    alpha = n / float(np.trace(M22))
    eye = np.eye(n)
    block_defect = np.linalg.norm(alpha * M22 - eye) / np.linalg.norm(eye)
    if block_defect > FERMI_RECOGNITION_TOL:
        raise NotAFermiEllipsoid(
            f"lower-right block deviates from a multiple of I by {block_defect:.3e}"
        )
    Mn = alpha * M
    cn = alpha * c
    Y_raw = Mn[:n, n:]
    Y = 0.5 * (Y_raw + Y_raw.T)
    try:
        X = sym_sqrt(Mn[:n, :n] - Y @ Y).array
    except NotPositiveDefinite as exc:
        raise NotAFermiEllipsoid(f"upper-left block minus Y^2 is not positive definite: {exc}") from exc
    expected = hbar * float(np.trace(X))
    if abs(cn - expected) > FERMI_RECOGNITION_TOL * max(cn, expected):
        raise NotAFermiEllipsoid(
            f"level {cn:.6e} inconsistent with hbar Tr X = {expected:.6e}"
        )
    return GaussianState(X, Y, e.center, hbar)


def polar_dual(A, hbar: float = 1.0) -> np.ndarray:
    """Shape matrix of the polar dual: {x : A x.x <= hbar} maps to
    {p : A^-1 p.p <= hbar}.  Involutive; hbar only names the level convention.
    """
    Aw = PositiveDefiniteMatrix(A)
    inv = np.linalg.inv(Aw.array)
    return 0.5 * (inv + inv.T)


def lagrangian_polar_dual(
    frame, A, hbar: float = 1.0
) -> tuple[CarriedEllipsoid, CarriedEllipsoid]:
    """The carried body S({(x,0) : A x.x <= hbar}) and its Lagrangian polar
    dual S({(0,p) : A^-1 p.p <= hbar}) on the frame's two planes."""
    pair = MicrolocalPair(frame, A, hbar)
    return pair.carried()


def john_ellipsoid_of_pair(pair: MicrolocalPair) -> QuantumBlob:
    """Largest-volume inscribed ellipsoid of the pair's product set.

    It is the quantum blob with carrier S @ M_{A^(1/2)}: pulling the product
    back by the frame leaves {A x.x <= hbar} x {A^-1 p.p <= hbar}, which is
    M_{A^(1/2)} applied to the bi-ball, whose inscribed ellipsoid is the ball
    of radius sqrt(hbar).  Note {A x.x <= hbar} = A^(-1/2)(ball), so the
    carrier uses the inverse square root of A, not its inverse.
    """
    carrier = pair.frame.S.array @ dilation(spectral_power(pair.A, 0.5))
    return QuantumBlob(carrier, pair.center, pair.hbar)


def oblique_projection_shapes(pair: MicrolocalPair) -> tuple[np.ndarray, np.ndarray]:
    """Shape matrices of the John blob's oblique projections onto the frame's
    planes, expressed in the planes' own coordinates.

    The projection onto l along l' is S Pi_x S^-1; the shadow of the blob
    {T u : |u| <= sqrt(hbar)} has shape (K K^T)^-1 where K collects the first
    (or last) n rows of S^-1 T.  For a genuine pair these reproduce A and
    A^-1.
    """
    n = pair.n
    T = john_ellipsoid_of_pair(pair).S.array
    K = np.linalg.solve(pair.frame.S.array, T)
    shape_x = np.linalg.inv(K[:n, :] @ K[:n, :].T)
    shape_p = np.linalg.inv(K[n:, :] @ K[n:, :].T)
    return 0.5 * (shape_x + shape_x.T), 0.5 * (shape_p + shape_p.T)


def micro_from_state(state: GaussianState) -> MicrolocalPair:
    """Canonical microlocal pair of a state: frame S^-1, unit shape.

    This is the unique choice for which the pair's John ellipsoid is exactly
    the state's quantum blob.
    """
    S = wigner_covariance(state).S
    return MicrolocalPair(S.inverse(), np.eye(state.n), state.hbar, state.z0)


def state_from_micro(pair: MicrolocalPair) -> GaussianState:
    """State of a pair, through its John ellipsoid (a quantum blob)."""
    return state_from_blob(john_ellipsoid_of_pair(pair))


@dataclass
class InclusionCertificate:
    """Spectral certificate that a state's blob sits inside its Fermi ellipsoid."""

    included: bool
    margin: float


def blob_inside_fermi(state: GaussianState, tol: float = 1e-12) -> InclusionCertificate:
    """Certify blob ⊆ Fermi ellipsoid for a state.

    Pulling both bodies back by the shared Wigner factor reduces the inclusion
    to diag(X, X) <= (Tr X) I, i.e. to Tr X >= omega_max; the certificate
    margin is Tr X - omega_max >= 0, zero exactly when n = 1.
    """
    w = np.linalg.eigvalsh(state.X)
    margin = float(np.trace(state.X) - w[-1])
    return InclusionCertificate(margin >= -tol * max(1.0, w[-1]), margin)
