"""FastAPI service wrapping the core package.

Every endpoint is a pure request/response computation; nothing is cached or
shared between calls, so the service can run with any number of workers.
Domain errors map to HTTP 400, malformed requests to 422, and internal
invariant violations (bugs) to 500 -- the CLI translates these to exit codes
1, 1 and 2 respectively.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from .. import __version__
from ..capacities import analyze_ellipsoid, analyze_state, eh_capacities, quantum_condition
from ..errors import InvalidInput, InvariantViolation, PhasecapError, UnsupportedDimension
from ..geometry import (
    Ellipsoid,
    blob_from_state,
    fermi_from_state,
    micro_from_state,
    state_from_blob,
    state_from_fermi,
    state_from_micro,
)
from ..oracles import (
    blob_fermi_inclusion,
    boundary_area,
    symplectic_eigen_oracle,
    wigner_mass,
    wigner_quadrature,
)
from ..states import GaussianState, wigner_covariance, wigner_eval
from ..symplectic import pre_iwasawa, symplectic_eigenvalues
from .models import (
    BlobModel,
    BoundarySection,
    CapacityRequest,
    CapacityResponse,
    CheckRequest,
    CheckResponse,
    ConvertRequest,
    ConvertResponse,
    EHEntryModel,
    EHRequest,
    EHResponse,
    EllipsoidModel,
    IwasawaRequest,
    IwasawaResponse,
    OracleRequest,
    OracleResponse,
    PairModel,
    StateModel,
    WignerRequest,
    WignerResponse,
)

app = FastAPI(title="phasecap", version=__version__)


@app.exception_handler(PhasecapError)
async def domain_error_handler(request: Request, exc: PhasecapError) -> JSONResponse:
    status = 500 if isinstance(exc, InvariantViolation) else 400
    return JSONResponse(
        status_code=status,
        content={"code": exc.code, "message": str(exc), "location": exc.location},
    )


@app.exception_handler(RequestValidationError)
async def request_error_handler(
    request: Request, exc: RequestValidationError
) -> JSONResponse:
    first = exc.errors()[0] if exc.errors() else {}
    location = ".".join(str(part) for part in first.get("loc", ())) or None
    return JSONResponse(
        status_code=422,
        content={
            "code": "invalid_input",
            "message": first.get("msg", "request validation failed"),
            "location": location,
        },
    )


@app.exception_handler(Exception)
async def unexpected_error_handler(request: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=500,
        content={"code": "internal_invariant", "message": str(exc), "location": None},
    )


_OBJECT_MODELS = {
    "state": StateModel,
    "fermi": EllipsoidModel,
    "blob": BlobModel,
    "micro": PairModel,
}


def _parse_as_state(kind: str, payload: dict, hbar: float | None) -> GaussianState:
    """Parse an object of the given representation and pull it back to a state."""
    model_cls = _OBJECT_MODELS[kind]
    try:
        model = model_cls(**payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = ".".join(str(p) for p in first.get("loc", ()))
        raise InvalidInput(f"bad {kind} object: {first.get('msg')}", loc or kind) from exc
    if kind == "state":
        return model.to_state(hbar)
    if kind == "fermi":
        return state_from_fermi(model.to_ellipsoid(), 1.0 if hbar is None else hbar)
    if kind == "blob":
        return state_from_blob(model.to_blob(hbar))
    return state_from_micro(model.to_pair(hbar))


def _render_from_state(kind: str, state: GaussianState) -> dict:
    if kind == "state":
        return StateModel.from_state(state).model_dump()
    if kind == "fermi":
        return EllipsoidModel.from_ellipsoid(fermi_from_state(state)).model_dump()
    if kind == "blob":
        return BlobModel.from_blob(blob_from_state(state)).model_dump()
    return PairModel.from_pair(micro_from_state(state)).model_dump()


def _boundary_sections(e: Ellipsoid, count: int) -> list[BoundarySection]:
    """Plot-ready boundary data.

    A 2-D ellipse is emitted as its actual boundary points.  Higher dimensions
    are emitted as the conjugate-plane sections in the Williamson normal
    coordinates of the matrix: circles of radius sqrt(level / lam_j), one per
    symplectic eigenvalue, each enclosing area pi * level / lam_j.
    """
    lam = symplectic_eigenvalues(e.matrix)
    t = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    circle = np.stack([np.cos(t), np.sin(t)], axis=0)
    sections = []
    if e.dim == 2:
        from ..matrices import spectral_power

        pts = (spectral_power(e.matrix, -0.5) @ (np.sqrt(e.level) * circle)).T + e.center
        sections.append(
            BoundarySection(
                j=1,
                omega=float(lam[0]),
                area=float(np.pi * e.level / lam[0]),
                points=pts.tolist(),
            )
        )
        return sections
    for j, lam_j in enumerate(lam, start=1):
        radius = float(np.sqrt(e.level / lam_j))
        pts = (radius * circle).T
        sections.append(
            BoundarySection(
                j=j,
                omega=float(lam_j),
                area=float(np.pi * e.level / lam_j),
                points=pts.tolist(),
            )
        )
    return sections


def _boundary_target(source: str, target: str, state: GaussianState):
    """The ellipsoid whose boundary --emit-boundary refers to for a conversion:
    the target representation when it is ellipsoid-like, else the source,
    else the state's Fermi ellipsoid."""
    for kind in (target, source):
        if kind == "fermi":
            return fermi_from_state(state)
        if kind == "blob":
            return blob_from_state(state).as_ellipsoid()
    return fermi_from_state(state)


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/convert", response_model=ConvertResponse)
def convert(req: ConvertRequest) -> ConvertResponse:
    state = _parse_as_state(req.source, req.object, req.hbar)
    rendered = _render_from_state(req.target, state)
    boundary = None
    if req.emit_boundary:
        ellipse = _boundary_target(req.source, req.target, state)
        boundary = _boundary_sections(ellipse, req.emit_boundary)
    return ConvertResponse(kind=req.target, object=rendered, boundary=boundary)


def _sniff_kind(payload: dict) -> str:
    if "X" in payload:
        return "state"
    if "matrix" in payload:
        return "ellipsoid"
    raise InvalidInput("cannot tell whether the object is a state or an ellipsoid", "object")


@app.post("/capacity", response_model=CapacityResponse)
def capacity(req: CapacityRequest) -> CapacityResponse:
    kind = req.kind or _sniff_kind(req.object)
    if kind == "state":
        state = _parse_as_state("state", req.object, req.hbar)
        analysis = analyze_state(state, req.k)
        boundary = None
        if req.emit_boundary:
            boundary = _boundary_sections(fermi_from_state(state), req.emit_boundary)
        return CapacityResponse(
            hbar=state.hbar,
            fermi=analysis["fermi"],
            blob=analysis["blob"],
            boundary=boundary,
        )
    try:
        model = EllipsoidModel(**req.object)
    except ValidationError as exc:
        raise InvalidInput(f"bad ellipsoid object: {exc.errors()[0].get('msg')}", "object") from exc
    e = model.to_ellipsoid()
    hbar = 1.0 if req.hbar is None else req.hbar
    report = analyze_ellipsoid(e, hbar, req.k)
    boundary = _boundary_sections(e, req.emit_boundary) if req.emit_boundary else None
    return CapacityResponse(hbar=hbar, report=report.to_dict(), boundary=boundary)


@app.post("/eh", response_model=EHResponse)
def eh(req: EHRequest) -> EHResponse:
    kind = _sniff_kind(req.object)
    if kind == "state":
        state = _parse_as_state("state", req.object, req.hbar)
        e = fermi_from_state(state)
        hbar = state.hbar
    else:
        try:
            model = EllipsoidModel(**req.object)
        except ValidationError as exc:
            raise InvalidInput(
                f"bad ellipsoid object: {exc.errors()[0].get('msg')}", "object"
            ) from exc
        e = model.to_ellipsoid()
        hbar = 1.0 if req.hbar is None else req.hbar
    entries = eh_capacities(e, req.k)
    lam = symplectic_eigenvalues(e.matrix)
    return EHResponse(
        hbar=hbar,
        level=e.level,
        symplectic_spectrum=[float(v) for v in lam],
        values=[EHEntryModel(value=t.value, N=t.N, j=t.j) for t in entries],
    )


@app.post("/check", response_model=CheckResponse)
def check(req: CheckRequest) -> CheckResponse:
    report = quantum_condition(np.asarray(req.Sigma, dtype=float), req.hbar)
    return CheckResponse(**report.to_dict())


@app.post("/wigner", response_model=WignerResponse)
def wigner(req: WignerRequest) -> WignerResponse:
    state = req.state.to_state(req.hbar)
    if state.n != 1:
        raise UnsupportedDimension(
            f"wigner grids are emitted for n = 1 states only, got n = {state.n}"
        )
    axis = np.linspace(-req.grid.half_width, req.grid.half_width, req.grid.points)
    rows = []
    for x in axis:
        pts = np.stack([np.full_like(axis, x), axis], axis=-1)
        vals = wigner_eval(state, pts)
        rows.extend([float(x), float(p), float(w)] for p, w in zip(axis, vals))
    return WignerResponse(header=["x", "p", "W"], rows=rows)


@app.post("/iwasawa", response_model=IwasawaResponse)
def iwasawa(req: IwasawaRequest) -> IwasawaResponse:
    from .models import SymplecticModel

    S = SymplecticModel(n=req.n, matrix=req.matrix).to_symplectic()
    factors = pre_iwasawa(S)
    return IwasawaResponse(
        P=factors.P.tolist(),
        L=factors.L.tolist(),
        U=factors.U.tolist(),
        V=factors.V.tolist(),
        reconstruction_defect=factors.reconstruction_defect,
        p_asymmetry_defect=factors.p_asymmetry_defect,
    )


@app.post("/oracle", response_model=OracleResponse)
def oracle(req: OracleRequest) -> OracleResponse:
    state = req.state.to_state(req.hbar)
    rng = np.random.default_rng(req.seed)
    checks: list[dict] = []
    data = wigner_covariance(state)
    S_inv = np.linalg.inv(data.S.array)

    if state.n <= 2:
        for _ in range(3):
            u = rng.standard_normal(2 * state.n)
            u *= rng.uniform(0.2, 1.5) * np.sqrt(state.hbar) / np.linalg.norm(u)
            z = state.z0 + S_inv @ u
            quad = wigner_quadrature(state, z)
            ref = float(wigner_eval(state, z))
            checks.append(
                {
                    "name": "wigner_quadrature",
                    "point": z.tolist(),
                    "value": quad.value,
                    "reference": ref,
                    "rel_err": abs(quad.value - ref) / abs(ref),
                    "imag_residue": quad.imag_residue,
                }
            )
    if state.n == 1:
        mass = wigner_mass(state)
        checks.append(
            {
                "name": "wigner_mass",
                "value": mass,
                "reference": 1.0,
                "rel_err": abs(mass - 1.0),
            }
        )

    inclusion = blob_fermi_inclusion(state, count=req.count, seed=req.seed)
    checks.append({"name": "blob_in_fermi", **inclusion.to_dict()})

    direct = symplectic_eigen_oracle(data.G)
    hermitian = symplectic_eigenvalues(data.G)
    for j, (d, h) in enumerate(zip(direct, hermitian), start=1):
        checks.append(
            {
                "name": "symplectic_eigenvalue",
                "j": j,
                "value": float(d),
                "reference": float(h),
                "rel_err": abs(float(d) - float(h)) / abs(float(h)),
            }
        )

    if state.n == 1:
        from ..capacities import ellipsoid_capacity, fermi_capacity

        fermi = fermi_from_state(state)
        area = boundary_area(fermi)
        ref = fermi_capacity(state).value
        checks.append(
            {
                "name": "boundary_area_fermi",
                "value": area,
                "reference": ref,
                "rel_err": abs(area - ref) / ref,
            }
        )
        blob = blob_from_state(state).as_ellipsoid()
        area_blob = boundary_area(blob)
        ref_blob = ellipsoid_capacity(blob)
        checks.append(
            {
                "name": "boundary_area_blob",
                "value": area_blob,
                "reference": ref_blob,
                "rel_err": abs(area_blob - ref_blob) / ref_blob,
            }
        )

    return OracleResponse(hbar=state.hbar, seed=req.seed, checks=checks)
