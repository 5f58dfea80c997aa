"""Command-line client for the allocation service.

The CLI builds HTTP requests and writes the returned tables; it does not
compute anything itself. Without --server it mounts the service in-process,
with --server it talks to a running instance (see `wpcn serve`).

Environment overrides: WPCN_SEED and WPCN_REALIZATIONS apply whenever the
corresponding flag is not given.
"""

from __future__ import annotations

import argparse
import asyncio
import os
import sys
from pathlib import Path

import httpx

from .harness import CSV_HEADER, OFFLINE_SCHEMES, ResultRow, emit_csv
from .online import VARIANTS as ONLINE_SCHEMES

DEFAULT_OFFLINE_Q_MW = (10.0, 20.0, 40.0, 60.0, 80.0)


class CliError(Exception):
    pass


def _load_config_payload(path: str | None) -> dict:
    if path is None:
        return {}
    import yaml

    raw = yaml.safe_load(Path(path).read_text())
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise CliError(f"config file {path} must contain a key-value mapping")
    return raw


def _env_int(name: str, flag_value: int | None, default: int) -> int:
    if flag_value is not None:
        return flag_value
    raw = os.environ.get(name)
    if raw is not None:
        try:
            return int(raw)
        except ValueError as exc:
            raise CliError(f"{name} must be an integer, got {raw!r}") from exc
    return default


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise CliError(f"expected a comma-separated number list, got {text!r}") from exc


async def _request(server: str | None, method: str, path: str,
                   payload: dict | None = None) -> dict:
    if server is None:
        from .service import app

        transport = httpx.ASGITransport(app=app)
        client = httpx.AsyncClient(transport=transport,
                                   base_url="http://wpcn.internal", timeout=None)
    else:
        client = httpx.AsyncClient(base_url=server, timeout=None)
    async with client:
        response = await client.request(method, path, json=payload)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise CliError(f"service rejected {path}: {detail}")
    return response.json()


def _call(args, method: str, path: str, payload: dict | None = None) -> dict:
    return asyncio.run(_request(args.server, method, path, payload))


def _rows_from_response(data: dict) -> list[ResultRow]:
    return [ResultRow(scheme=r["scheme"], sweep_name=r["sweep_name"],
                      sweep_value=r["sweep_value"], mean_rate=r["mean_rate_bpshz"],
                      std_rate=r["std_rate"], realizations=r["realizations"],
                      seed=r["seed"]) for r in data["rows"]]


def _run_sweep(args, sweep_name: str, sweep_values: list[float],
               schemes: list[str]) -> int:
    payload = {
        "config": _load_config_payload(args.config),
        "sweep_name": sweep_name,
        "sweep_values": sweep_values,
        "schemes": schemes,
        "realizations": _env_int("WPCN_REALIZATIONS", args.realizations, 200),
        "seed": _env_int("WPCN_SEED", args.seed, 1),
        "window_size": args.window_size,
    }
    data = _call(args, "POST", "/experiment", payload)
    out = emit_csv(_rows_from_response(data), args.out)
    print(f"wrote {len(data['rows'])} rows to {out}")
    return 0


def _cmd_offline_sweep(args) -> int:
    values = _float_list(args.q_mw) if args.q_mw else list(DEFAULT_OFFLINE_Q_MW)
    schemes = args.schemes.split(",") if args.schemes else list(OFFLINE_SCHEMES)
    return _run_sweep(args, "eap_power_mw", values, schemes)


def _cmd_online_sweep(args) -> int:
    if (args.q_mw is None) == (args.window_sizes is None):
        raise CliError("give exactly one of --q-mw or --window-sizes")
    if args.schemes:
        schemes = args.schemes.split(",")
    else:
        schemes = ["dynamic_joint", *ONLINE_SCHEMES]
    if args.q_mw is not None:
        return _run_sweep(args, "eap_power_mw", _float_list(args.q_mw), schemes)
    return _run_sweep(args, "window_size", _float_list(args.window_sizes), schemes)


def _cmd_oracle_check(args) -> int:
    payload = {
        "num_slots": args.slots,
        "num_subchannels": args.subchannels,
        "instances": args.instances,
        "seed": _env_int("WPCN_SEED", args.seed, 0),
        "initial_battery_j": args.battery_j,
    }
    data = _call(args, "POST", "/oracle-check", payload)
    for rec in data["instances"]:
        print(f"seed={rec['seed']:>6d}  oracle={rec['oracle_rate']:.6f}  "
              f"dynamic={rec['dynamic_rate']:.6f}  static={rec['static_rate']:.6f}  "
              f"upper={rec['upper_bound_rate']:.6f}  "
              f"{'ok' if rec['ok'] else 'VIOLATION'}")
    if not data["ok"]:
        raise CliError("heuristic/oracle ordering violated")
    print(f"oracle-check passed on {len(data['instances'])} instances")
    return 0


def _cmd_demo(args) -> int:
    seed = _env_int("WPCN_SEED", args.seed, 0)
    config = _load_config_payload(args.config)
    health = _call(args, "GET", "/health")
    print(f"service {health['version']} [{health['status']}]")
    cut = _call(args, "GET", "/cutoff/15")
    print(f"window 15 -> observe {cut['cutoff'] - 1} slots "
          f"(pick-the-best probability {cut['success_probability']:.4f})")
    print(f"\nper-scheme rates, one realization (seed {seed}):")
    for scheme in ("dynamic_joint", "static_joint", "upper_bound"):
        data = _call(args, "POST", "/allocate/offline",
                     {"config": config, "seed": seed, "scheme": scheme})
        fired = sum(1 for sc in data["sc_allocation"] if sc > 0)
        print(f"  {scheme:<18s} {data['rate_bpshz']:.4f} bps/Hz "
              f"({fired} energy slots)")
    for variant in ONLINE_SCHEMES:
        data = _call(args, "POST", "/allocate/online",
                     {"config": config, "seed": seed, "variant": variant,
                      "window_size": args.window_size})
        print(f"  {variant:<18s} {data['rate_bpshz']:.4f} bps/Hz")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpcn",
        description="wireless-powered OFDM link: sweeps, checks and service")
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    common_sweep = argparse.ArgumentParser(add_help=False)
    common_sweep.add_argument("--config", default=None, help="YAML config path")
    common_sweep.add_argument("--out", required=True, help="output CSV path")
    common_sweep.add_argument("--seed", type=int, default=None)
    common_sweep.add_argument("--realizations", type=int, default=None,
                              help="Monte-Carlo realizations (default 200)")
    common_sweep.add_argument("--window-size", type=int, default=15,
                              help="window size for online schemes in power sweeps")
    common_sweep.add_argument("--schemes", default=None,
                              help="comma-separated scheme list")

    p = sub.add_parser("offline-sweep", parents=[common_sweep],
                       help="full-CSI schemes vs EAP power")
    p.add_argument("--q-mw", default=None,
                   help="comma-separated EAP powers in mW (default 10,20,40,60,80)")
    p.set_defaults(func=_cmd_offline_sweep)

    p = sub.add_parser("online-sweep", parents=[common_sweep],
                       help="causal schemes vs EAP power or window size")
    p.add_argument("--q-mw", default=None, help="comma-separated EAP powers in mW")
    p.add_argument("--window-sizes", default=None,
                   help="comma-separated window sizes (alternative sweep axis)")
    p.set_defaults(func=_cmd_online_sweep)

    p = sub.add_parser("oracle-check",
                       help="verify heuristics against the exhaustive search")
    p.add_argument("--slots", type=int, default=3)
    p.add_argument("--subchannels", type=int, default=2)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--battery-j", type=float, default=0.0)
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("demo", help="one-realization tour of the schemes")
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--window-size", type=int, default=15)
    p.set_defaults(func=_cmd_demo)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
