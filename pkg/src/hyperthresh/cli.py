"""Command-line client for the compute handlers.

Every subcommand builds the same request model the HTTP service accepts
and dispatches it to the shared handler; with ``--server URL`` the request
is POSTed to a running service instead, and the identical response model
comes back.  File outputs are written from the response payloads, so
local and remote runs produce the same bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .service import handlers, schemas

_ROUTES = {
    "quad": ("/quad", schemas.QuadRequest, schemas.QuadResponse, handlers.handle_quad),
    "prox": ("/prox", schemas.ProxRequest, schemas.ProxResponse, handlers.handle_prox),
    "sparsity": (
        "/sparsity",
        schemas.SparsityRequest,
        schemas.SparsityResponse,
        handlers.handle_sparsity,
    ),
    "bounds-flip": (
        "/bounds/flip",
        schemas.FlipBoundsRequest,
        schemas.BoundsResponse,
        handlers.handle_flip_bounds,
    ),
    "bounds-bernstein": (
        "/bounds/bernstein",
        schemas.BernsteinBoundsRequest,
        schemas.BoundsResponse,
        handlers.handle_bernstein_bounds,
    ),
    "recover": ("/recover", schemas.RecoverRequest, schemas.RecoverResponse, handlers.handle_recover),
    "denoise": ("/denoise", schemas.DenoiseRequest, schemas.DenoiseResponse, handlers.handle_denoise),
}


def _dispatch(route: str, request, server: str | None):
    path, _, response_model, handler = _ROUTES[route]
    if server is None:
        return handler(request)
    import httpx

    reply = httpx.post(server.rstrip("/") + path, json=request.model_dump(), timeout=600.0)
    if reply.status_code != 200:
        raise RuntimeError(f"server returned {reply.status_code}: {reply.text}")
    return response_model.model_validate(reply.json())


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    return data


def _merge(config: dict, overrides: dict) -> dict:
    merged = dict(config)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return merged


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _cmd_quad(args) -> int:
    request = schemas.QuadRequest(
        points=args.points, verify_degree=args.verify, matrix_degree=args.matrix
    )
    response = _dispatch("quad", request, args.server)
    print("index,node,weight")
    for i, (x, w) in enumerate(zip(response.nodes, response.weights)):
        print(f"{i},{x!r},{w!r}")
    if response.defect is not None:
        print(
            f"exactness defect through degree {args.verify}: {response.defect:.6e}",
            file=sys.stderr,
        )
    if response.matrix_csv is not None:
        sys.stdout.write(response.matrix_csv)
    return 0


def _cmd_prox(args) -> int:
    request = schemas.ProxRequest(
        op=args.op, y=args.y, lam=args.lam, q=args.q, alpha=args.alpha, verify=args.verify
    )
    response = _dispatch("prox", request, args.server)
    print(f"value={response.value!r}")
    if response.threshold is not None:
        print(f"threshold_a={response.threshold!r}")
        print(f"iterations={response.iterations}")
    if response.oracle_value is not None:
        print(f"oracle={response.oracle_value!r}")
        print(f"difference={response.oracle_gap:.3e}")
    return 0


def _cmd_sparsity(args) -> int:
    with open(args.coeffs, "r", encoding="utf-8") as handle:
        values = [float(token) for token in handle.read().replace(",", " ").split()]
    request = schemas.SparsityRequest(coefficients=values, q=args.q, k=args.k)
    response = _dispatch("sparsity", request, args.server)
    print(f"u_k={response.u_k!r}")
    print(f"lambda={response.lam!r}")
    print(f"support_size={response.support_size}")
    print(f"guaranteed_bound={response.guaranteed_bound}")
    return 0


def _cmd_bounds(args) -> int:
    if args.check == "flip":
        request = schemas.FlipBoundsRequest(
            sigma=args.sigma, lam=args.lam, trials=args.trials, seed=args.seed
        )
        response = _dispatch("bounds-flip", request, args.server)
    else:
        request = schemas.BernsteinBoundsRequest(
            k=args.k, dim=args.dim, trials=args.trials, seed=args.seed
        )
        response = _dispatch("bounds-bernstein", request, args.server)
    sys.stdout.write(response.csv)
    return 0


def _cmd_recover(args) -> int:
    overrides = {
        "points": args.n,
        "dim": args.dim,
        "sparsity": args.sparsity,
        "sigma": args.sigma,
        "trials": args.trials,
        "seed": args.seed,
        "top_k_retention": args.retain,
        "workers": args.workers,
    }
    if args.fresh_signal:
        overrides["fresh_signal_per_trial"] = True
    request = schemas.RecoverRequest(**_merge(_load_config(args.config), overrides))
    response = _dispatch("recover", request, args.server)
    sys.stdout.write(response.csv)
    if response.failures:
        print(f"failures: {response.failures}", file=sys.stderr)
    if args.out:
        if args.format == "csv":
            _write(args.out, response.csv)
        else:
            _write(args.out, response.model_dump_json(indent=2) + "\n")
    return 0


def _cmd_denoise(args) -> int:
    overrides = {
        "points": args.n,
        "dim": args.dim,
        "sigma": args.sigma,
        "impulse": args.impulse,
        "retain_k": args.retain,
        "seed": args.seed,
        "grid_points": args.grid,
    }
    request = schemas.DenoiseRequest(**_merge(_load_config(args.config), overrides))
    response = _dispatch("denoise", request, args.server)
    sys.stdout.write(response.metrics_csv)
    if response.failures:
        print(f"failures: {response.failures}", file=sys.stderr)
    if args.out_metrics:
        _write(args.out_metrics, response.metrics_csv)
    if args.out_curves and response.curves_csv is not None:
        _write(args.out_curves, response.curves_csv)
    if args.out_svg and response.svg is not None:
        _write(args.out_svg, response.svg)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("hyperthresh.service.app:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperthresh",
        description="Thresholded polynomial projection: quadrature, shrinkage, bounds, experiments.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None, help="route the request to a running service")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quad", parents=[common], help="print a Gauss-Legendre rule as CSV")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--verify", type=int, default=None, metavar="DEGREE")
    p.add_argument("--matrix", type=int, default=None, metavar="DEGREE")
    p.set_defaults(func=_cmd_quad)

    p = sub.add_parser("prox", parents=[common], help="apply one shrinkage operator to a value")
    p.add_argument("--op", choices=["hard", "soft", "springback", "lq"], required=True)
    p.add_argument("--y", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--q", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--verify", action="store_true", help="also run the grid-search oracle")
    p.set_defaults(func=_cmd_prox)

    p = sub.add_parser("sparsity", parents=[common], help="threshold selection for a target support size")
    p.add_argument("--coeffs", required=True, help="file of whitespace/comma separated numbers")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_sparsity)

    p = sub.add_parser("bounds", parents=[common], help="Monte Carlo check of a tail bound")
    p.add_argument("--check", choices=["flip", "bernstein"], required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--sigma", type=float, default=0.2)
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--k", type=int, default=22)
    p.add_argument("--dim", type=int, default=250)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("recover", parents=[common], help="sparse recovery study")
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", "--points", dest="n", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--sparsity", type=int, default=None)
    p.add_argument("--retain", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--fresh-signal", action="store_true")
    p.add_argument("--config", default=None, help="JSON file of request fields; flags override")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_recover)

    p = sub.add_parser("denoise", parents=[common], help="function denoising study")
    p.add_argument("--sigma", type=float, default=None)
    p.add_argument("--impulse", type=float, default=None)
    p.add_argument("--retain", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", "--points", dest="n", type=int, default=None)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--grid", type=int, default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out-curves", default=None)
    p.add_argument("--out-svg", default=None)
    p.add_argument("--out-metrics", default=None)
    p.set_defaults(func=_cmd_denoise)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # argparse handles its own errors; this covers compute failures
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
