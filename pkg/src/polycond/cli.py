"""Command-line client for the polycond service.

The CLI builds the same request models the HTTP API accepts and sends them
to an in-process instance of the service by default (no server needed), or
to a running instance via --server. Exit codes: 0 success, 2 argument
error, 3 precision error, 1 anything else.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import random
import sys

import httpx


def _parse_pair(text: str, kind=int, sep="x", name="pair"):
    parts = text.split(sep)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{name} must look like A{sep}B, got {text!r}")
    try:
        return [kind(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _grid(text):
    return _parse_pair(text, int, "x", "grid")


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _strings(text):
    return [t for t in text.split(",") if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycond",
        description="Polynomial conditioning laboratory: condition-number "
        "curves, root sensitivities, and pseudozero sets.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this path (default stdout)")
    common.add_argument(
        "--format",
        choices=("json", "csv", "svg"),
        default="json",
        help="output format (default json)",
    )
    common.add_argument(
        "--server",
        help="base URL of a running polycond service (default: run in-process)",
    )
    common.add_argument(
        "--timeout", type=float, default=3600.0, help="HTTP timeout in seconds"
    )
    common.add_argument(
        "--precision", type=int, help="working precision in decimal digits"
    )
    common.add_argument("--samples", type=int, help="curve sample count")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled points")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("runge-equi", parents=[common],
                       help="condition of the Runge interpolant, equispaced nodes")
    p.add_argument("--degrees", type=_ints, help="comma list, default 5,8,13,21,34,55,89")

    p = sub.add_parser("runge-cheb", parents=[common],
                       help="condition of the Runge interpolant, Chebyshev nodes")
    p.add_argument("--degrees", type=_ints, help="comma list, default 5,8,13,21,34,55,89")

    p = sub.add_parser("wilkinson", parents=[common],
                       help="B(x) and root conditioning of prod (x-k)")
    p.add_argument("--n", type=int, default=20)

    p = sub.add_parser("wilkinson-scaled", parents=[common],
                       help="the same roots mapped onto a unit-scale interval")
    p.add_argument("--n", type=int, default=20)
    p.add_argument(
        "--target", choices=("symmetric", "zero-two", "zero-one"), default="symmetric"
    )

    p = sub.add_parser("second", parents=[common],
                       help="clustered-root examples c20 / s20, both bases")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--grid", type=_grid, help="pseudozero grid, e.g. 128x128")
    p.add_argument("--no-fields", action="store_true", help="skip pseudozero fields")

    p = sub.add_parser("pseudozeros", parents=[common],
                       help="pseudozero field and contours of a polynomial")
    p.add_argument("--poly", default="wilkinson20")
    p.add_argument("--grid", type=_grid, help="grid resolution, e.g. 512x512")
    p.add_argument("--levels", type=_floats, help="comma list, e.g. 1e-14,1e-18")
    p.add_argument("--region", type=_floats, help="re0,re1,im0,im1")
    p.add_argument("--weights", type=_strings, help="comma list of exact weights")

    p = sub.add_parser("condition", parents=[common],
                       help="sampled condition curve B(x) of a polynomial")
    p.add_argument("--poly", default="wilkinson20")
    p.add_argument("--interval", type=_strings, help="a,b (exact rationals ok)")
    p.add_argument("--basis", choices=("monomial", "lagrange"), default="monomial")
    p.add_argument("--relative", action="store_true", help="sample B(x)/|p(x)|")

    p = sub.add_parser("witness", parents=[common],
                       help="minimal perturbation making a point a root")
    p.add_argument("--poly", default="wilkinson20")
    p.add_argument("--z", type=_strings, help="re,im (exact rationals ok)")
    p.add_argument("--region", type=_floats,
                   help="re0,re1,im0,im1: sample a seeded random z here if --z is absent")
    p.add_argument("--weights", type=_strings, help="comma list of exact weights")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8317)

    return parser


def _payload(args) -> tuple[str, dict]:
    cmd = args.command
    body: dict = {}

    def put(key, value):
        if value is not None:
            body[key] = value

    if cmd in ("runge-equi", "runge-cheb"):
        put("degrees", args.degrees)
        put("samples", args.samples)
        if cmd == "runge-cheb":
            put("precision", args.precision)
        return f"/v1/scenarios/{cmd}", body
    if cmd == "wilkinson":
        put("n", args.n)
        put("samples", args.samples)
        return "/v1/scenarios/wilkinson", body
    if cmd == "wilkinson-scaled":
        put("n", args.n)
        put("target", args.target)
        put("samples", args.samples)
        return "/v1/scenarios/wilkinson-scaled", body
    if cmd == "second":
        put("n", args.n)
        put("samples", args.samples)
        put("grid", args.grid)
        put("precision", args.precision)
        if args.no_fields:
            body["include_fields"] = False
        return "/v1/scenarios/second", body
    if cmd == "pseudozeros":
        put("poly", args.poly)
        put("grid", args.grid)
        put("levels", args.levels)
        put("region", args.region)
        put("weights", args.weights)
        put("precision", args.precision)
        return "/v1/pseudozeros", body
    if cmd == "condition":
        put("poly", args.poly)
        put("interval", args.interval)
        put("samples", args.samples)
        put("basis", args.basis)
        put("precision", args.precision)
        if args.relative:
            body["relative"] = True
        return "/v1/condition", body
    if cmd == "witness":
        put("poly", args.poly)
        put("weights", args.weights)
        put("precision", args.precision)
        if args.z is not None:
            if len(args.z) != 2:
                raise SystemExit(_usage_error("--z needs re,im"))
            body["z_re"], body["z_im"] = args.z
        else:
            region = args.region or [-1.0, 25.0, -8.0, 8.0]
            rng = random.Random(args.seed)
            body["z_re"] = rng.uniform(region[0], region[1])
            body["z_im"] = rng.uniform(region[2], region[3])
        return "/v1/witness", body
    raise SystemExit(2)


def _usage_error(message: str) -> int:
    print(f"polycond: error: {message}", file=sys.stderr)
    return 2


def _send(args, path: str, body: dict) -> httpx.Response:
    params = {}
    if args.command != "witness" and args.format:
        params["format"] = args.format
    if args.server:
        with httpx.Client(base_url=args.server, timeout=args.timeout) as client:
            return client.post(path, json=body, params=params)

    from .service import create_app

    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport,
            base_url="http://polycond.internal",
            timeout=args.timeout,
        ) as client:
            return await client.post(path, json=body, params=params)

    return asyncio.run(go())


def _deliver(args, response: httpx.Response) -> int:
    if response.status_code == 200:
        text = response.text
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
            if not text.endswith("\n"):
                sys.stdout.write("\n")
        return 0
    try:
        detail = response.json().get("detail")
    except json.JSONDecodeError:
        detail = response.text
    if isinstance(detail, dict) and "kind" in detail:
        kind, message = detail["kind"], detail.get("message", "")
    else:
        kind, message = "validation", json.dumps(detail)
    print(f"polycond: {kind} error: {message}", file=sys.stderr)
    if response.status_code == 409 or kind == "precision":
        return 3
    if response.status_code in (400, 422):
        return 2
    return 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        path, body = _payload(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        response = _send(args, path, body)
    except httpx.HTTPError as exc:
        print(f"polycond: transport error: {exc}", file=sys.stderr)
        return 1
    return _deliver(args, response)


if __name__ == "__main__":
    sys.exit(main())
