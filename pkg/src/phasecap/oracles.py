"""Independent brute-force verifiers.

Every oracle here reaches its answer by a route disjoint from the closed
forms it cross-checks: the Wigner transform by direct numerical integration
of the defining integral, set inclusions by seeded Monte-Carlo sampling,
2-D capacities by the boundary action integral, and symplectic eigenvalues
by the plain complex eigenproblem of J M instead of the Hermitian one.

Randomized oracles take explicit seeds; given the same inputs and seed the
results are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import EmptySample, InvalidInput, InvariantViolation, UnsupportedDimension
from .geometry import Ellipsoid, blob_from_state, fermi_from_state
from .matrices import PositiveDefiniteMatrix, spectral_power
from .states import GaussianState, fermi_symbol
from .symplectic import symplectic_form

# truncation half-width in units of sqrt(hbar / omega_min); 8 of these cover
# more than 11 standard deviations of the integrand, so the error budget is
# dominated by roundoff, not truncation
DEFAULT_HALF_WIDTH_FACTOR = 8.0
DEFAULT_POINTS = {1: 2048, 2: 256}


def wavefunction(state: GaussianState, xs) -> np.ndarray:
    """Configuration-space values of the normalized Gaussian wavefunction.

    The translated state carries the Heisenberg-Weyl phase
    exp(i (p0.x - p0.x0 / 2) / hbar); the constant part of that phase is
    irrelevant for any Wigner value but kept for definiteness.
    """
    pts = np.atleast_2d(np.asarray(xs, dtype=float))
    if pts.shape[-1] != state.n:
        raise InvalidInput(f"x has length {pts.shape[-1]}, expected {state.n}", "x")
    x0 = state.z0[: state.n]
    p0 = state.z0[state.n :]
    W = state.X + 1j * state.Y
    dx = pts - x0
    quad = np.einsum("ij,...i,...j->...", W, dx, dx)
    phase = (pts @ p0 - 0.5 * float(p0 @ x0)) / state.hbar
    norm = (np.linalg.det(state.X) / (np.pi * state.hbar) ** state.n) ** 0.25
    return norm * np.exp(1j * phase - quad / (2.0 * state.hbar))


class QuadratureResult(NamedTuple):
    value: float
    imag_residue: float


def _grid_defaults(state: GaussianState, half_width, points) -> tuple[float, int]:
    if half_width is None:
        omega_min = float(np.linalg.eigvalsh(state.X)[0])
        half_width = DEFAULT_HALF_WIDTH_FACTOR * np.sqrt(state.hbar / omega_min)
    if points is None:
        points = DEFAULT_POINTS[state.n]
    if not (np.isfinite(half_width) and half_width > 0):
        raise InvalidInput(f"half_width must be positive, got {half_width}", "half_width")
    if points < 2:
        raise InvalidInput(f"points must be >= 2, got {points}", "points")
    return float(half_width), int(points)


def _trapezoid(values: np.ndarray, step: float, axis: int = -1) -> np.ndarray:
    first = np.take(values, 0, axis=axis)
    last = np.take(values, -1, axis=axis)
    return step * (values.sum(axis=axis) - 0.5 * (first + last))


def wigner_quadrature(
    state: GaussianState, z, half_width: float | None = None, points: int | None = None
) -> QuadratureResult:
    """Wigner value at z by direct trapezoidal quadrature of the defining
    integral (2 pi hbar)^-n ∫ exp(-i p.y / hbar) psi(x + y/2) psi*(x - y/2) dy.

    Supports n = 1 and n = 2.  The imaginary part of the numerical integral is
    reported and must stay below 1e-8.
    """
    if state.n not in (1, 2):
        raise UnsupportedDimension(f"quadrature supports n in {{1, 2}}, got n = {state.n}")
    half_width, points = _grid_defaults(state, half_width, points)
    zarr = np.asarray(z, dtype=float)
    if zarr.shape != (2 * state.n,):
        raise InvalidInput(f"z has shape {zarr.shape}, expected ({2 * state.n},)", "z")
    x = zarr[: state.n]
    p = zarr[state.n :]
    axis = np.linspace(-half_width, half_width, points)
    step = axis[1] - axis[0]
    if state.n == 1:
        y = axis[:, None]
        f = (
            wavefunction(state, x + 0.5 * y)
            * np.conj(wavefunction(state, x - 0.5 * y))
            * np.exp(-1j * (y[:, 0] * p[0]) / state.hbar)
        )
        integral = _trapezoid(f, step)
    else:
        ya, yb = np.meshgrid(axis, axis, indexing="ij")
        y = np.stack([ya.ravel(), yb.ravel()], axis=-1)
        f = (
            wavefunction(state, x + 0.5 * y)
            * np.conj(wavefunction(state, x - 0.5 * y))
            * np.exp(-1j * (y @ p) / state.hbar)
        ).reshape(points, points)
        integral = _trapezoid(_trapezoid(f, step, axis=1), step)
    value = integral / (2.0 * np.pi * state.hbar) ** state.n
    residue = abs(float(value.imag))
    if residue >= 1e-8:
        raise InvariantViolation(f"quadrature imaginary residue {residue:.3e} >= 1e-8")
    return QuadratureResult(float(value.real), residue)


def wigner_mass(
    state: GaussianState, half_width: float | None = None, points: int = 601
) -> float:
    """Total mass of the closed-form Wigner function on a 2-D phase-space grid.

    n = 1 only; the exact value is 1 for every state.
    """
    if state.n != 1:
        raise UnsupportedDimension(f"mass quadrature supports n = 1, got n = {state.n}")
    from .states import wigner_eval, wigner_covariance

    if half_width is None:
        lam_min = float(np.linalg.eigvalsh(wigner_covariance(state).G)[0])
        half_width = 8.0 * np.sqrt(state.hbar / lam_min)
    axis = np.linspace(-half_width, half_width, points)
    step = axis[1] - axis[0]
    xs, ps = np.meshgrid(axis, axis, indexing="ij")
    grid = np.stack([xs.ravel(), ps.ravel()], axis=-1) + state.z0
    vals = wigner_eval(state, grid).reshape(points, points)
    return float(_trapezoid(_trapezoid(vals, step, axis=1), step))


@dataclass
class SampleReport:
    """Monte-Carlo inclusion outcome: points tested inside the inner set,
    and how many of them escaped the outer set."""

    violations: int
    count: int
    seed: int

    def to_dict(self) -> dict:
        return {"violations": self.violations, "count": self.count, "seed": self.seed}


def sample_inclusion(
    inner: Callable[[np.ndarray], np.ndarray],
    outer: Callable[[np.ndarray], np.ndarray],
    bounds: tuple[np.ndarray, np.ndarray],
    count: int = 10_000,
    seed: int = 42,
) -> SampleReport:
    """Sample ``count`` points uniformly in the inner set's bounding box,
    keep the inner members, and count how many violate the outer predicate.

    Predicates take an (m, dim) array and return boolean membership per row.
    """
    lo = np.asarray(bounds[0], dtype=float)
    hi = np.asarray(bounds[1], dtype=float)
    if lo.shape != hi.shape or lo.ndim != 1:
        raise InvalidInput("bounds must be two vectors of equal length", "bounds")
    if count <= 0:
        raise InvalidInput(f"count must be positive, got {count}", "count")
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(count, lo.shape[0]))
    members = pts[np.asarray(inner(pts), dtype=bool)]
    if members.shape[0] == 0:
        raise EmptySample("no sampled point lies in the inner set")
    violations = int(np.count_nonzero(~np.asarray(outer(members), dtype=bool)))
    return SampleReport(violations, int(members.shape[0]), int(seed))


def blob_fermi_inclusion(
    state: GaussianState, count: int = 10_000, seed: int = 42
) -> SampleReport:
    """Monte-Carlo check that the state's quantum blob sits inside its Fermi
    ellipsoid.  Must report zero violations for every state."""
    blob = blob_from_state(state).as_ellipsoid()
    slack = 1e-9 * fermi_from_state(state).level

    def inner(pts):
        return blob.membership(pts) <= blob.level * (1.0 + 1e-12)

    def outer(pts):
        return fermi_symbol(state, pts) <= slack

    return sample_inclusion(inner, outer, blob.bounding_box(), count, seed)


def boundary_area(e: Ellipsoid, samples: int = 10_000) -> float:
    """Area enclosed by a 2-D ellipse boundary, by the shoelace action integral.

    Parametrizes the boundary as center + sqrt(level) M^(-1/2) (cos t, sin t)
    and sums the discrete action form p dx; for every 2-D ellipse this equals
    the symplectic capacity pi * level / lam.
    """
    if e.dim != 2:
        raise UnsupportedDimension(f"boundary area needs a 2-D ellipse, got dim {e.dim}")
    if samples < 3:
        raise InvalidInput(f"samples must be >= 3, got {samples}", "samples")
    root = spectral_power(e.matrix, -0.5)
    t = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    circle = np.sqrt(e.level) * np.stack([np.cos(t), np.sin(t)], axis=0)
    pts = (root @ circle).T + e.center
    x, p = pts[:, 0], pts[:, 1]
    x_next, p_next = np.roll(x, -1), np.roll(p, -1)
    action = 0.5 * np.sum((p + p_next) * (x_next - x))
    return float(abs(action))


def symplectic_eigen_oracle(M) -> np.ndarray:
    """Symplectic eigenvalues via the plain complex spectrum of J M.

    Independent route from the Hermitian computation: extracts the positive
    imaginary parts of eig(J M) and sorts them descending.
    """
    A = PositiveDefiniteMatrix(M).array
    n = A.shape[0] // 2
    if A.shape[0] % 2 != 0:
        raise InvalidInput(f"matrix dimension {A.shape[0]} is odd", "M")
    w = np.linalg.eigvals(symplectic_form(n) @ A)
    positive = np.sort(w.imag[w.imag > 0])[::-1]
    if positive.shape[0] != n:
        raise InvariantViolation(
            f"expected {n} positive imaginary eigenvalues, found {positive.shape[0]}"
        )
    return positive


def nested_scale_by_bisection(
    A, P_shape, iterations: int = 100
) -> float:
    """Largest lam with lam * {A^-1 p.p <= hbar} inside {P_shape p.p <= hbar},
    found by bisection on the positive-semidefiniteness of A^-1 - lam^2 P_shape.

    Cross-checks the closed form rho(A^(1/2) P_shape A^(1/2))^(-1/2) through a
    different numerical route (eigenvalues of a difference instead of the
    spectral radius of a product).
    """
    A_inv = np.linalg.inv(PositiveDefiniteMatrix(A).array)
    A_inv = 0.5 * (A_inv + A_inv.T)
    P = PositiveDefiniteMatrix(P_shape).array

    def nested(lam: float) -> bool:
        diff = A_inv - lam**2 * P
        w = np.linalg.eigvalsh(0.5 * (diff + diff.T))
        return bool(w[0] >= -1e-14 * max(1.0, abs(w[-1])))

    lo, hi = 0.0, 1.0
    while nested(hi):
        lo, hi = hi, 2.0 * hi
        if hi > 2.0**60:
            raise InvalidInput("inclusion never fails; P_shape is degenerate", "P_shape")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if nested(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
