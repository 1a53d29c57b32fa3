"""Command-line front end.

A thin client for the service layer: each subcommand loads its input file,
builds one request, sends it to an in-process instance of the FastAPI app
(or to a running server when --server is given) and prints the JSON reply.
Grid dumps and boundary point sets come out as CSV with the headers
"x,p,W" and "x,p".

Exit status: 0 on success, 1 on parse/validation failure (a JSON error object
{code, message, location} goes to stdout), 2 on an internal invariant
violation, which is a reportable bug.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import httpx

KINDS = ("state", "fermi", "blob", "micro")


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _fail(code: str, message: str, location: str | None = None, status: int = 1) -> int:
    _print_json({"code": code, "message": message, "location": location})
    return status


class _CliError(Exception):
    def __init__(self, code: str, message: str, location: str | None = None):
        super().__init__(message)
        self.code = code
        self.location = location


def _load_json(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError("parse_error", f"cannot read input file: {exc}", path) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError("parse_error", f"invalid JSON: {exc}", path) from exc
    if not isinstance(data, dict):
        raise _CliError("parse_error", "top-level JSON value must be an object", path)
    return data


def _parse_grid(spec: str) -> tuple[float, int]:
    try:
        half_width, points = spec.split(":")
        return float(half_width), int(points)
    except ValueError as exc:
        raise _CliError(
            "parse_error", f"grid spec must look like W:N, got {spec!r}", "--grid"
        ) from exc


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=120.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app, raise_server_exceptions=False)


def _post(server: str | None, path: str, body: dict) -> tuple[int, dict]:
    try:
        with _client(server) as client:
            resp = client.post(path, json=body)
    except httpx.HTTPError as exc:
        raise _CliError("connection_error", f"cannot reach server: {exc}", server) from exc
    try:
        payload = resp.json()
    except ValueError as exc:
        raise _CliError("bad_response", f"server returned non-JSON body: {exc}") from exc
    return resp.status_code, payload


def _finish(status: int, payload: dict, render) -> int:
    if status == 200:
        render(payload)
        return 0
    _print_json(payload)
    return 2 if status >= 500 else 1


def _print_boundary(sections) -> None:
    for section in sections:
        print(
            f"# section j={section['j']} omega={section['omega']!r} "
            f"area={section['area']!r}"
        )
        print("x,p")
        for x, p in section["points"]:
            print(f"{x!r},{p!r}")


def _cmd_convert(args) -> int:
    body = {
        "source": args.source,
        "target": args.target,
        "object": _load_json(args.input),
        "hbar": args.hbar,
        "emit_boundary": args.emit_boundary,
    }
    status, payload = _post(args.server, "/convert", body)

    def render(data):
        _print_json(data["object"])
        if data.get("boundary"):
            _print_boundary(data["boundary"])

    return _finish(status, payload, render)


def _cmd_capacity(args) -> int:
    body = {
        "object": _load_json(args.input),
        "kind": args.kind,
        "hbar": args.hbar,
        "k": args.k,
        "emit_boundary": args.emit_boundary,
    }
    status, payload = _post(args.server, "/capacity", body)

    def render(data):
        boundary = data.pop("boundary", None)
        _print_json({k: v for k, v in data.items() if v is not None})
        if boundary:
            _print_boundary(boundary)

    return _finish(status, payload, render)


def _cmd_eh(args) -> int:
    body = {"object": _load_json(args.input), "k": args.k, "hbar": args.hbar}
    status, payload = _post(args.server, "/eh", body)
    return _finish(status, payload, _print_json)


def _cmd_check(args) -> int:
    data = _load_json(args.input)
    if "Sigma" not in data:
        raise _CliError("parse_error", 'covariance file must contain "Sigma"', args.input)
    hbar = args.hbar if args.hbar is not None else data.get("hbar", 1.0)
    status, payload = _post(args.server, "/check", {"Sigma": data["Sigma"], "hbar": hbar})
    return _finish(status, payload, _print_json)


def _cmd_wigner(args) -> int:
    half_width, points = _parse_grid(args.grid)
    body = {
        "state": _load_json(args.input),
        "grid": {"half_width": half_width, "points": points},
        "hbar": args.hbar,
    }
    status, payload = _post(args.server, "/wigner", body)

    def render(data):
        print(",".join(data["header"]))
        for x, p, w in data["rows"]:
            print(f"{x!r},{p!r},{w!r}")

    return _finish(status, payload, render)


def _cmd_iwasawa(args) -> int:
    data = _load_json(args.input)
    status, payload = _post(args.server, "/iwasawa", data)
    return _finish(status, payload, _print_json)


def _cmd_oracle(args) -> int:
    body = {
        "state": _load_json(args.input),
        "seed": args.seed,
        "count": args.count,
        "hbar": args.hbar,
    }
    status, payload = _post(args.server, "/oracle", body)
    return _finish(status, payload, _print_json)


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasecap",
        description="Gaussian states as phase-space geometry: conversions, "
        "capacities, and uncertainty checks.",
    )
    parser.add_argument("--server", help="base URL of a running service; default is in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_hbar(p):
        p.add_argument("--hbar", type=float, help="override hbar (must be positive)")

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("input", help="JSON file holding the source object")
    p.add_argument("--from", dest="source", required=True, choices=KINDS)
    p.add_argument("--to", dest="target", required=True, choices=KINDS)
    p.add_argument("--emit-boundary", type=int, metavar="M", help="append M boundary points per section")
    add_hbar(p)
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("capacity", help="capacity report for a state or ellipsoid")
    p.add_argument("input")
    p.add_argument("--kind", choices=("state", "ellipsoid"), help="force the input kind")
    p.add_argument("--k", type=int, default=5, help="Ekeland-Hofer entries in the report")
    p.add_argument("--emit-boundary", type=int, metavar="M")
    add_hbar(p)
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("eh", help="Ekeland-Hofer capacity sequence")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    add_hbar(p)
    p.set_defaults(func=_cmd_eh)

    p = sub.add_parser("check", help="quantum condition on a covariance matrix")
    p.add_argument("input")
    add_hbar(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("wigner", help="CSV grid of Wigner values for an n=1 state")
    p.add_argument("input")
    p.add_argument("--grid", default="6:121", metavar="W:N", help="half-width and points per axis")
    add_hbar(p)
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("iwasawa", help="pre-Iwasawa factors of a symplectic matrix")
    p.add_argument("input")
    p.set_defaults(func=_cmd_iwasawa)

    p = sub.add_parser("oracle", help="run the independent-verifier suite on a state")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=10_000, help="Monte-Carlo sample count")
    add_hbar(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        return _fail(exc.code, str(exc), exc.location)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
