"""Command-line client for the hyperbolicity service.

Every subcommand except `serve` talks to the HTTP API.  By default the
application is mounted in process, so no server needs to run; pass
--server http://host:port to use a remote instance started with
`hypflux serve`.

Exit codes:
    0  success
    1  transport failure or unexpected server error
    2  invalid arguments or configuration
    3  domain failure (inadmissible state, constitutive violation, ...)
    4  sweep completed but every row failed
    5  reproduction check failed
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import sys

import httpx

from . import __version__

#: Canonical order for `hypflux reproduce all`.
ALL_CHECKS = (
    "complexroots",
    "hnull",
    "qnontrivial",
    "ccjroots",
    "main",
    "ordering",
)


# ---------------------------------------------------------------------------
# transport


class Client:
    """Uniform .get/.post over either HTTP or the in-process app."""

    def __init__(self, server: str | None):
        self._transport = None
        if server:
            self._client = httpx.Client(base_url=server.rstrip("/"), timeout=300.0)
        else:
            # Mount the ASGI app directly; the service never leaves the
            # process and no socket is opened.
            from .service import create_app

            self._transport = httpx.ASGITransport(app=create_app())
            self._client = None

    def _run(self, method: str, path: str, **kwargs) -> httpx.Response:
        async def go():
            async with httpx.AsyncClient(
                transport=self._transport, base_url="http://hypflux.local"
            ) as client:
                return await client.request(method, path, **kwargs)

        return asyncio.run(go())

    def get(self, path: str) -> httpx.Response:
        if self._client is not None:
            return self._client.get(path)
        return self._run("GET", path)

    def post(self, path: str, payload: dict) -> httpx.Response:
        if self._client is not None:
            return self._client.post(path, json=payload)
        return self._run("POST", path, json=payload)

    def close(self) -> None:
        if self._client is not None:
            self._client.close()


def _fail(message: str, code: int) -> "SystemExit":
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(code)


def _payload(resp: httpx.Response) -> dict:
    """Decode a response, exiting with the mapped code on failure."""
    try:
        body = resp.json()
    except ValueError:
        body = {}
    if resp.status_code == 200:
        return body
    detail = body.get("detail", resp.text)
    if not isinstance(detail, str):
        detail = json.dumps(detail)
    if resp.status_code == 400:
        raise _fail(detail, 2)
    if resp.status_code == 422:
        # Domain errors carry a "code"; schema validation errors do not.
        raise _fail(detail, 3 if "code" in body else 2)
    raise _fail(f"server returned {resp.status_code}: {detail}", 1)


def _request(client: Client, method: str, path: str, payload: dict | None = None):
    try:
        resp = client.post(path, payload) if method == "post" else client.get(path)
    except httpx.HTTPError as exc:
        raise _fail(f"cannot reach server: {exc}", 1) from None
    return _payload(resp)


# ---------------------------------------------------------------------------
# argument parsing helpers


def _floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")


def _lambda_nu(text: str):
    """Either a preset name or an explicit 'lambda,nu' pair."""
    if "," not in text:
        return text
    pair = _floats(text)
    if len(pair) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lambda,nu', got {text!r}")
    return pair


def _key_value(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return key, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"value of {key!r} must be a float")


def _key_json(text: str) -> tuple[str, object]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=JSON, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _state_payload(args) -> dict:
    return {
        "rho": args.rho,
        "v": args.v,
        "theta": args.theta,
        "q": args.q,
    }


def _xi_for(args) -> list[float]:
    if args.xi != "auto":
        return _floats(args.xi)
    if any(c != 0.0 for c in args.q):
        return list(args.q)
    return [1.0] + [0.0] * (len(args.q) - 1)


def _model_fields(args) -> dict:
    return {"model": args.model, "model_params": dict(args.param or [])}


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _fmt_complex(entry: dict) -> str:
    re, im = entry["re"], entry["im"]
    if im == 0.0:
        return f"{re:.12g}"
    sign = "+" if im >= 0 else "-"
    return f"{re:.12g} {sign} {abs(im):.12g}i"


# ---------------------------------------------------------------------------
# subcommands


def _cmd_classify(args, client: Client) -> int:
    payload = {
        **_model_fields(args),
        "state": _state_payload(args),
        "xi": _xi_for(args),
        "lambda_nu": args.lambda_nu,
        "ccj": args.ccj,
        "tolerances": dict(args.tol or []),
    }
    body = _request(client, "post", "/classify", payload)
    if args.json:
        _print_json(body)
        return 0
    print(body["verdict"])
    if body.get("delta") is not None:
        print(f"delta = {body['delta']:.12g}")
    print(f"spectral radius = {body['spectral_radius']:.12g}")
    print("clusters:")
    for cluster in body["clusters"]:
        print(
            f"  eta = {_fmt_complex(cluster['representative'])} "
            f"(algebraic {cluster['algebraic']}, geometric {cluster['geometric']})"
        )
    return 0


def _sweep_config(args) -> dict:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            try:
                config = json.load(fh)
            except json.JSONDecodeError as exc:
                raise _fail(f"malformed config {args.config}: {exc}", 2) from None
        if not isinstance(config, dict):
            raise _fail(f"config {args.config} must hold a JSON object", 2)
    else:
        config = {}
    for key, value in args.set or []:
        config[key] = value
    return config


def _write_text(path: str, text: str) -> None:
    # Byte-exact output; the CSV carries its own CRLF line endings.
    with open(path, "wb") as fh:
        fh.write(text.encode("utf-8"))


def _cmd_sweep(args, client: Client) -> int:
    config = _sweep_config(args)
    output = config.get("output", {}) if isinstance(config.get("output"), dict) else {}
    body = _request(client, "post", "/sweep", {"config": config})
    targets = {
        "csv": args.csv or output.get("csv"),
        "jsonl": args.jsonl or output.get("jsonl"),
        "verdict_map": args.verdict_map or output.get("verdict_map"),
    }
    for key, path in targets.items():
        if path:
            _write_text(path, body[key])
            print(f"wrote {key} to {path}", file=sys.stderr)
    if args.json:
        _print_json(body["summary"])
    else:
        summary = body["summary"]
        print(
            f"rows = {summary['rows']}, failed = {summary['failed']}, "
            f"fraction_hyperbolic = {summary['fraction_hyperbolic']}"
        )
        for verdict, count in summary["verdicts"].items():
            print(f"  {verdict}: {count}")
    if body["summary"]["rows"] and body["summary"]["failed"] == body["summary"]["rows"]:
        return 4
    return 0


def _cmd_reproduce(args, client: Client) -> int:
    ids = ALL_CHECKS if args.theorem_id == "all" else (args.theorem_id,)
    bodies = []
    for theorem_id in ids:
        bodies.append(
            _request(
                client, "post", "/reproduce",
                {"theorem_id": theorem_id, "seed": args.seed},
            )
        )
    if args.json:
        _print_json(bodies if len(bodies) > 1 else bodies[0])
    else:
        for i, body in enumerate(bodies):
            if i:
                print()
            for line in body["lines"]:
                print(line)
    return 0 if all(body["passed"] for body in bodies) else 5


def _cmd_modal(args, client: Client) -> int:
    payload = {
        **_model_fields(args),
        "state": _state_payload(args),
        "xi": _xi_for(args),
        "k_values": args.k,
        "lambda_nu": args.lambda_nu,
        "with_source": not args.no_source,
        "ccj": args.ccj,
    }
    body = _request(client, "post", "/modal", payload)
    if args.json:
        _print_json(body)
        return 0
    scenario = args.scenario or ("ccj" if args.ccj else "coupled")
    rows = [
        (
            scenario,
            format(k, ".17g"),
            format(rate, ".17g"),
            "" if ratio is None else format(ratio, ".17g"),
        )
        for k, rate, ratio in zip(
            body["wavenumbers"], body["growth_rates"], body["ratios"]
        )
    ]
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["scenario", "k", "max_im_omega", "max_im_omega_over_k"])
        writer.writerows(rows)
        _write_text(args.csv, buf.getvalue())
        print(f"wrote modal table to {args.csv}", file=sys.stderr)
    else:
        print("scenario,k,max_im_omega,max_im_omega_over_k")
        for row in rows:
            print(",".join(row))
    return 0


def _cmd_ccj_speeds(args, client: Client) -> int:
    payload = {
        **_model_fields(args),
        "rho": args.rho,
        "theta": args.theta,
        "v_dot_xi": args.v_dot_xi,
    }
    body = _request(client, "post", "/ccj-speeds", payload)
    if args.json:
        _print_json(body)
        return 0
    for name in ("eta3", "eta4", "eta0", "eta2", "eta1"):
        print(f"{name} = {body[name]:.17g}")
    print(f"r = {body['r']:.17g}, m = {body['m']:.17g}")
    return 0


def _cmd_witness(args, client: Client) -> int:
    payload = {
        **_model_fields(args),
        "rho": args.rho,
        "theta": args.theta,
        "lambda_nu": args.lambda_nu,
    }
    body = _request(client, "post", "/witness", payload)
    if args.json:
        _print_json(body)
        return 0
    print(f"lambda = {body['lambda']:g}, nu = {body['nu']:g} (gamma = {body['gamma']:g})")
    print(f"threshold q^2 = {body['q_threshold_sq']:.17g}")
    print(f"witness q = {body['witness_q']:.17g}")
    print(f"delta at witness = {body['delta_at_witness']:.12g}")
    roots = ", ".join(_fmt_complex(z) for z in body["roots"])
    print(f"quartic roots ({body['classification']}): {roots}")
    print(f"1D verdict at witness: {body['verdict_1d']}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", default="ideal-gas", help="constitutive model name")
    parser.add_argument(
        "--param",
        action="append",
        type=_key_value,
        metavar="NAME=VALUE",
        help="constitutive parameter override (repeatable)",
    )


def _add_state_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rho", type=float, default=1.0, help="density")
    parser.add_argument("--theta", type=float, default=1.0, help="temperature")
    parser.add_argument(
        "--v", type=_floats, default=[0.0, 0.0, 0.0],
        help="velocity components, comma separated (1 or 3 of them)",
    )
    parser.add_argument(
        "--q", type=_floats, default=[0.0, 0.0, 0.0],
        help="heat-flux components, comma separated (1 or 3 of them)",
    )
    parser.add_argument(
        "--xi", default="auto",
        help="direction (normalized server side); 'auto' aligns with q, "
        "falling back to the first axis when q = 0",
    )
    parser.add_argument(
        "--lambda-nu", type=_lambda_nu, default=None, metavar="PAIR",
        help="coupling pair 'lambda,nu' or a preset name",
    )
    parser.add_argument(
        "--ccj", action="store_true",
        help="use the uncoupled comparison system instead",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypflux",
        description="Hyperbolicity analysis for compressible flow with "
        "objective Cattaneo heat flux.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server", default=None, metavar="URL",
        help="remote service URL (default: run the app in process)",
    )
    common.add_argument("--json", action="store_true", help="print the raw JSON response")

    p = sub.add_parser(
        "classify", parents=[common],
        help="classify one (state, direction) as HYPERBOLIC / WEAKLY_HYPERBOLIC / NON_HYPERBOLIC",
    )
    _add_model_args(p)
    _add_state_args(p)
    p.add_argument(
        "--tol",
        action="append",
        type=_key_value,
        metavar="NAME=VALUE",
        help="tolerance override: real_tol, cluster_gap or rank_rtol (repeatable)",
    )
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser(
        "sweep", parents=[common],
        help="classify a parameter grid and write CSV/JSONL artifacts",
    )
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument(
        "--set",
        action="append",
        type=_key_json,
        metavar="KEY=JSON",
        help="override one top-level config key (repeatable)",
    )
    p.add_argument("--csv", help="write the classification table here")
    p.add_argument("--jsonl", help="write one JSON record per row here")
    p.add_argument("--verdict-map", help="write the per-pair hyperbolic fractions here")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser(
        "reproduce", parents=[common],
        help="rerun one of the packaged result checks",
    )
    p.add_argument(
        "theorem_id",
        help="one of %s, or 'all'" % ", ".join(ALL_CHECKS),
    )
    p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser(
        "modal", parents=[common],
        help="plane-wave growth rates over a range of wavenumbers",
    )
    _add_model_args(p)
    _add_state_args(p)
    p.add_argument(
        "--k", type=_floats, default=[0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0],
        help="wavenumbers, comma separated",
    )
    p.add_argument("--no-source", action="store_true", help="drop the relaxation source")
    p.add_argument("--scenario", help="label for the first CSV column")
    p.add_argument("--csv", help="write the table here instead of stdout")
    p.set_defaults(func=_cmd_modal)

    p = sub.add_parser(
        "ccj-speeds", parents=[common],
        help="closed-form characteristic speeds of the uncoupled system",
    )
    _add_model_args(p)
    p.add_argument("--rho", type=float, default=1.0, help="density")
    p.add_argument("--theta", type=float, default=1.0, help="temperature")
    p.add_argument("--v-dot-xi", type=float, default=0.0, help="advective shift xi.v")
    p.set_defaults(func=_cmd_ccj_speeds)

    p = sub.add_parser(
        "witness", parents=[common],
        help="heat-flux threshold and a non-hyperbolic witness state",
    )
    _add_model_args(p)
    p.add_argument("--rho", type=float, default=1.0, help="density")
    p.add_argument("--theta", type=float, default=1.0, help="temperature")
    p.add_argument(
        "--lambda-nu", type=_lambda_nu, required=True, metavar="PAIR",
        help="coupling pair 'lambda,nu' or a preset name (lambda + nu != 0)",
    )
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("serve", help="run the HTTP service with uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=None)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    client = Client(args.server)
    try:
        return args.func(args, client)
    except SystemExit as exc:
        return int(exc.code or 0)
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
