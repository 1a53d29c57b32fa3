"""Symplectic capacities of ellipsoids and products, and the quantum
covariance condition.

All symplectic capacities agree on ellipsoids: for {M (z-z0).(z-z0) <= level}
the common value is pi * level / lam_max, lam_max the largest symplectic
eigenvalue of M.  The Ekeland-Hofer sequence of the same ellipsoid is the
sorted multiset {N * pi * level / lam_j : N = 1, 2, ...}, which reduces to
ceil(k/n) * pi R^2 on balls.

The quantum condition on a covariance matrix Sigma -- positive
semidefiniteness of Sigma + (i hbar / 2) J -- is equivalent to its covariance
ellipsoid {(1/2) Sigma^-1 z.z <= 1} having capacity >= pi hbar, and implies
(but is not implied by) the per-index Robertson-Schrodinger inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput, InvariantViolation, PairNotNested
from .geometry import Ellipsoid, MicrolocalPair, blob_from_state, fermi_from_state
from .matrices import HermitianMatrix, PositiveDefiniteMatrix, is_psd, spectral_power
from .states import GaussianState
from .symplectic import symplectic_eigenvalues, symplectic_form

# shared relative tolerance keeping the psd and capacity routes consistent at
# the boundary of the quantum condition
QUANTUM_TOL = 1e-10


def ellipsoid_capacity(e: Ellipsoid) -> float:
    """Common symplectic capacity pi * level / lam_max of an ellipsoid."""
    lam = symplectic_eigenvalues(e.matrix)
    return float(np.pi * e.level / lam[0])


@dataclass
class FermiCapacityCertificate:
    """Fermi-ellipsoid capacity pi hbar Tr X / omega_max with its bounds.

    ``lower`` and ``upper`` are pi hbar and n pi hbar (h/2 and nh/2 in units
    of h = 2 pi hbar); ``ellipsoid_value`` is the independent recomputation
    through the ellipsoid route.
    """

    value: float
    lower: float
    upper: float
    bounds_ok: bool
    ellipsoid_value: float
    agreement_defect: float

    def __float__(self) -> float:
        return self.value


def fermi_capacity(state: GaussianState) -> FermiCapacityCertificate:
    """Capacity of a state's Fermi ellipsoid, with the bounds certificate."""
    w = np.linalg.eigvalsh(state.X)
    value = float(np.pi * state.hbar * np.trace(state.X) / w[-1])
    lower = np.pi * state.hbar
    upper = state.n * np.pi * state.hbar
    slack = 1e-10 * upper
    bounds_ok = (lower - slack) <= value <= (upper + slack)
    via_ellipsoid = ellipsoid_capacity(fermi_from_state(state))
    defect = abs(value - via_ellipsoid) / value
    if defect > 1e-9:
        raise InvariantViolation(
            f"Fermi capacity routes disagree: {value} vs {via_ellipsoid}"
        )
    return FermiCapacityCertificate(value, lower, upper, bounds_ok, via_ellipsoid, defect)


@dataclass
class EHEntry:
    """One Ekeland-Hofer value N * pi * level / lam_j with its provenance."""

    value: float
    N: int
    j: int


def eh_capacities(e: Ellipsoid, k: int) -> list[EHEntry]:
    """First k Ekeland-Hofer capacities of an ellipsoid, nondecreasing.

    The values are the sorted multiset {N * r_j : N >= 1} with
    r_j = pi * level / lam_j over the symplectic eigenvalues lam_1 >= ... >=
    lam_n (j is 1-based into that descending order).  The first entry equals
    the single-value capacity.
    """
    if k <= 0:
        raise InvalidInput(f"k must be >= 1, got {k}", "k")
    lam = symplectic_eigenvalues(e.matrix)
    r = np.pi * e.level / lam  # ascending since lam is descending
    bound = k * r[0] * (1 + 1e-12)
    candidates = []
    for j, rj in enumerate(r, start=1):
        n_max = max(1, int(math.floor(bound / rj)) + 1)
        candidates.extend((N * rj, N, j) for N in range(1, n_max + 1))
    candidates.sort()
    return [EHEntry(float(v), N, j) for v, N, j in candidates[:k]]


def cmax_product(pair: MicrolocalPair, P_shape=None) -> float:
    """Largest capacity of the pair's product set.

    For the exact pair (body times its polar dual) the value is 4 hbar.  When
    the dual side is enlarged to P = {p : P_shape p.p <= hbar} containing it,
    the value is 4 lam_max hbar with lam_max = rho(A^(1/2) P_shape A^(1/2))^(-1/2),
    the largest scaling of the dual still inside P.
    """
    if P_shape is None:
        return 4.0 * pair.hbar
    Pw = PositiveDefiniteMatrix(P_shape)
    if Pw.n != pair.n:
        raise InvalidInput(f"P_shape has dimension {Pw.n}, expected {pair.n}", "P_shape")
    Ah = spectral_power(pair.A, 0.5)
    rho = float(np.linalg.eigvalsh(Ah @ Pw.array @ Ah)[-1])
    lam_max = rho**-0.5
    if lam_max < 1.0 - 1e-10:
        raise PairNotNested(
            f"P does not contain the dual body: admissible scaling {lam_max:.6e} < 1"
        )
    return 4.0 * lam_max * pair.hbar


@dataclass
class RSCheck:
    """One Robertson-Schrodinger inequality Dx_j^2 Dp_j^2 >= D(x_j,p_j)^2 + hbar^2/4."""

    j: int
    lhs: float
    rhs: float
    passed: bool


@dataclass
class QuantumConditionReport:
    """Outcome of the quantum condition on a covariance matrix.

    ``psd_check`` and ``capacity_check`` test the same condition through two
    different routes (Hermitian eigenvalues of Sigma + (i hbar/2) J versus the
    capacity of the covariance ellipsoid); ``agree`` records that they match.
    A passing psd_check implies every per-index RS inequality, but not
    conversely.
    """

    hbar: float
    psd_check: bool
    capacity: float
    capacity_check: bool
    rs_checks: list[RSCheck]
    agree: bool

    def to_dict(self) -> dict:
        return {
            "hbar": self.hbar,
            "psd_check": self.psd_check,
            "capacity": self.capacity,
            "capacity_in_pi_hbar": self.capacity / (np.pi * self.hbar),
            "capacity_check": self.capacity_check,
            "rs_checks": [
                {"j": c.j, "lhs": c.lhs, "rhs": c.rhs, "passed": c.passed}
                for c in self.rs_checks
            ],
            "agree": self.agree,
        }


def quantum_condition(Sigma, hbar: float = 1.0) -> QuantumConditionReport:
    """Evaluate the quantum condition on a covariance matrix Sigma.

    psd_check: Sigma + (i hbar / 2) J is positive semidefinite.
    capacity_check: the covariance ellipsoid {(1/2) Sigma^-1 z.z <= 1} has
    capacity >= pi hbar.  The two are equivalent; both are reported together
    with the per-index Robertson-Schrodinger outcomes read off Sigma's blocks.
    """
    Sw = PositiveDefiniteMatrix(Sigma)
    S_arr = Sw.array
    n = Sw.n // 2
    if Sw.n % 2 != 0:
        raise InvalidInput(f"covariance dimension {Sw.n} is odd", "Sigma")
    if not (np.isfinite(hbar) and hbar > 0):
        raise InvalidInput(f"hbar must be positive, got {hbar}", "hbar")
    J = symplectic_form(n)
    psd = is_psd(HermitianMatrix(S_arr + 0.5j * hbar * J), tol=QUANTUM_TOL)
    half_inv = 0.5 * np.linalg.inv(S_arr)
    cap = ellipsoid_capacity(Ellipsoid(0.5 * (half_inv + half_inv.T), level=1.0))
    cap_ok = bool(cap >= np.pi * hbar * (1.0 - QUANTUM_TOL))
    rs = []
    for j in range(n):
        lhs = float(S_arr[j, j] * S_arr[n + j, n + j])
        rhs = float(S_arr[j, n + j] ** 2 + hbar**2 / 4.0)
        ok = lhs >= rhs - QUANTUM_TOL * (1.0 + abs(lhs) + abs(rhs))
        rs.append(RSCheck(j + 1, lhs, rhs, ok))
    return QuantumConditionReport(float(hbar), bool(psd), cap, cap_ok, rs, bool(psd) == cap_ok)


@dataclass
class CapacityReport:
    """Capacity analysis of one ellipsoid.

    The capacity is re-derived from the spectrum on construction and the EH
    sequence is required nondecreasing; a mismatch is an internal bug, not an
    input problem.
    """

    capacity: float
    level: float
    hbar: float
    symplectic_spectrum: list[float]
    eh_sequence: list[EHEntry]
    flags: QuantumConditionReport
    capacity_in_pi_hbar: float = field(init=False)

    def __post_init__(self):
        expected = np.pi * self.level / self.symplectic_spectrum[0]
        if abs(self.capacity - expected) > 1e-9 * max(abs(expected), 1e-300):
            raise InvariantViolation(
                f"capacity {self.capacity} inconsistent with spectrum value {expected}"
            )
        values = [entry.value for entry in self.eh_sequence]
        if any(b < a * (1 - 1e-12) for a, b in zip(values, values[1:])):
            raise InvariantViolation("Ekeland-Hofer sequence is not nondecreasing")
        self.capacity_in_pi_hbar = self.capacity / (np.pi * self.hbar)

    def to_dict(self) -> dict:
        return {
            "capacity": self.capacity,
            "capacity_in_pi_hbar": self.capacity_in_pi_hbar,
            "level": self.level,
            "hbar": self.hbar,
            "symplectic_spectrum": list(self.symplectic_spectrum),
            "eh_sequence": [
                {"value": entry.value, "N": entry.N, "j": entry.j}
                for entry in self.eh_sequence
            ],
            "flags": self.flags.to_dict(),
        }


def analyze_ellipsoid(e: Ellipsoid, hbar: float = 1.0, k: int = 5) -> CapacityReport:
    """Full capacity report for an ellipsoid.

    The uncertainty flags are computed for the covariance matrix whose
    covariance ellipsoid is exactly this set, Sigma = (level / 2) M^-1.
    """
    lam = symplectic_eigenvalues(e.matrix)
    sigma_equiv = 0.5 * e.level * np.linalg.inv(e.matrix)
    report = quantum_condition(0.5 * (sigma_equiv + sigma_equiv.T), hbar)
    return CapacityReport(
        capacity=ellipsoid_capacity(e),
        level=e.level,
        hbar=float(hbar),
        symplectic_spectrum=[float(v) for v in lam],
        eh_sequence=eh_capacities(e, k),
        flags=report,
    )


def analyze_state(state: GaussianState, k: int = 5) -> dict:
    """Capacity reports for a state's Fermi ellipsoid and quantum blob.

    The blob report always shows capacity pi hbar with all symplectic
    eigenvalues 1; the Fermi report carries the bounds certificate
    pi hbar <= c <= n pi hbar.
    """
    cert = fermi_capacity(state)
    fermi_report = analyze_ellipsoid(fermi_from_state(state), state.hbar, k)
    blob_report = analyze_ellipsoid(
        blob_from_state(state).as_ellipsoid(), state.hbar, k
    )
    return {
        "hbar": state.hbar,
        "fermi": {
            **fermi_report.to_dict(),
            "bounds": {
                "lower": cert.lower,
                "upper": cert.upper,
                "ok": cert.bounds_ok,
                "agreement_defect": cert.agreement_defect,
            },
        },
        "blob": blob_report.to_dict(),
    }
