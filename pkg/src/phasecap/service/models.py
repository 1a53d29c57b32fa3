"""Pydantic request/response models and the JSON representation formats.

One object per file/request body.  The published formats:

    state     {"n": int, "hbar": number, "X": [[...]], "Y": [[...]], "z0": [...]}
    fermi     {"matrix": [[...]], "center": [...], "level": number}
    blob      {"S": [[...]], "center": [...], "hbar": number}
    micro     {"frame": [[...]], "A": [[...]], "hbar": number, "center": [...]}
    symplectic {"n": int, "matrix": [[...]]}
    covariance {"Sigma": [[...]], "hbar": number}

Shape and type validation happens here; the mathematical validation (symmetry,
positive definiteness, symplecticity) happens in the core constructors.
"""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..errors import InvalidInput
from ..geometry import Ellipsoid, MicrolocalPair, QuantumBlob
from ..states import GaussianState
from ..symplectic import SymplecticMatrix

Matrix = list[list[float]]
Vector = list[float]

Kind = Literal["state", "fermi", "blob", "micro"]

# JSON loaders for symplectic carriers re-certify and reject above this defect
LOAD_SYMPLECTIC_TOL = 1e-8


def _matrix(values: Matrix, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidInput(f"{name} must be a square matrix, got shape {arr.shape}", name)
    return arr


class StateModel(BaseModel):
    n: int = Field(ge=1)
    hbar: float = Field(default=1.0, gt=0)
    X: Matrix
    Y: Matrix
    z0: Vector

    def to_state(self, hbar_override: float | None = None) -> GaussianState:
        X = _matrix(self.X, "X")
        if X.shape[0] != self.n:
            raise InvalidInput(f"X has dimension {X.shape[0]}, expected n = {self.n}", "X")
        return GaussianState(
            X,
            _matrix(self.Y, "Y"),
            np.asarray(self.z0, dtype=float),
            self.hbar if hbar_override is None else hbar_override,
        )

    @classmethod
    def from_state(cls, state: GaussianState) -> "StateModel":
        return cls(
            n=state.n,
            hbar=state.hbar,
            X=state.X.tolist(),
            Y=state.Y.tolist(),
            z0=state.z0.tolist(),
        )


class EllipsoidModel(BaseModel):
    matrix: Matrix
    center: Vector
    level: float = Field(gt=0)

    def to_ellipsoid(self) -> Ellipsoid:
        return Ellipsoid(
            _matrix(self.matrix, "matrix"),
            np.asarray(self.center, dtype=float),
            self.level,
        )

    @classmethod
    def from_ellipsoid(cls, e: Ellipsoid) -> "EllipsoidModel":
        return cls(matrix=e.matrix.tolist(), center=e.center.tolist(), level=e.level)


class BlobModel(BaseModel):
    S: Matrix
    center: Vector
    hbar: float = Field(default=1.0, gt=0)

    def to_blob(self, hbar_override: float | None = None) -> QuantumBlob:
        return QuantumBlob(
            SymplecticMatrix(_matrix(self.S, "S"), tol=LOAD_SYMPLECTIC_TOL),
            np.asarray(self.center, dtype=float),
            self.hbar if hbar_override is None else hbar_override,
        )

    @classmethod
    def from_blob(cls, blob: QuantumBlob) -> "BlobModel":
        return cls(S=blob.S.array.tolist(), center=blob.center.tolist(), hbar=blob.hbar)


class PairModel(BaseModel):
    frame: Matrix
    A: Matrix
    hbar: float = Field(default=1.0, gt=0)
    center: Vector

    def to_pair(self, hbar_override: float | None = None) -> MicrolocalPair:
        return MicrolocalPair(
            SymplecticMatrix(_matrix(self.frame, "frame"), tol=LOAD_SYMPLECTIC_TOL),
            _matrix(self.A, "A"),
            self.hbar if hbar_override is None else hbar_override,
            np.asarray(self.center, dtype=float),
        )

    @classmethod
    def from_pair(cls, pair: MicrolocalPair) -> "PairModel":
        return cls(
            frame=pair.frame.S.array.tolist(),
            A=pair.A.tolist(),
            hbar=pair.hbar,
            center=pair.center.tolist(),
        )


class SymplecticModel(BaseModel):
    n: int = Field(ge=1)
    matrix: Matrix

    def to_symplectic(self) -> SymplecticMatrix:
        arr = _matrix(self.matrix, "matrix")
        if arr.shape[0] != 2 * self.n:
            raise InvalidInput(
                f"matrix has dimension {arr.shape[0]}, expected 2n = {2 * self.n}",
                "matrix",
            )
        return SymplecticMatrix(arr, tol=LOAD_SYMPLECTIC_TOL)


class GridModel(BaseModel):
    half_width: float = Field(gt=0)
    points: int = Field(ge=2)


class BoundarySection(BaseModel):
    j: int
    omega: float
    area: float
    points: list[list[float]]


class ConvertRequest(BaseModel):
    source: Kind
    target: Kind
    object: dict
    hbar: Optional[float] = Field(default=None, gt=0)
    emit_boundary: Optional[int] = Field(default=None, ge=3)


class ConvertResponse(BaseModel):
    kind: Kind
    object: dict
    boundary: Optional[list[BoundarySection]] = None


class CapacityRequest(BaseModel):
    object: dict
    kind: Optional[Literal["state", "ellipsoid"]] = None
    hbar: Optional[float] = Field(default=None, gt=0)
    k: int = Field(default=5, ge=1)
    emit_boundary: Optional[int] = Field(default=None, ge=3)


class CapacityResponse(BaseModel):
    hbar: float
    fermi: Optional[dict] = None
    blob: Optional[dict] = None
    report: Optional[dict] = None
    boundary: Optional[list[BoundarySection]] = None


class EHRequest(BaseModel):
    object: dict
    k: int = Field(ge=1)
    hbar: Optional[float] = Field(default=None, gt=0)


class EHEntryModel(BaseModel):
    value: float
    N: int
    j: int


class EHResponse(BaseModel):
    hbar: float
    level: float
    symplectic_spectrum: list[float]
    values: list[EHEntryModel]


class CheckRequest(BaseModel):
    Sigma: Matrix
    hbar: float = Field(default=1.0, gt=0)


class RSCheckModel(BaseModel):
    j: int
    lhs: float
    rhs: float
    passed: bool


class CheckResponse(BaseModel):
    hbar: float
    psd_check: bool
    capacity: float
    capacity_in_pi_hbar: float
    capacity_check: bool
    rs_checks: list[RSCheckModel]
    agree: bool


class WignerRequest(BaseModel):
    state: StateModel
    grid: GridModel
    hbar: Optional[float] = Field(default=None, gt=0)


class WignerResponse(BaseModel):
    header: list[str]
    rows: list[list[float]]


class IwasawaRequest(BaseModel):
    n: int = Field(ge=1)
    matrix: Matrix


class IwasawaResponse(BaseModel):
    P: Matrix
    L: Matrix
    U: Matrix
    V: Matrix
    reconstruction_defect: float
    p_asymmetry_defect: float


class OracleRequest(BaseModel):
    state: StateModel
    seed: int = 42
    count: int = Field(default=10_000, ge=1)
    hbar: Optional[float] = Field(default=None, gt=0)


class OracleResponse(BaseModel):
    hbar: float
    seed: int
    checks: list[dict]


class ErrorModel(BaseModel):
    code: str
    message: str
    location: Optional[str] = None
