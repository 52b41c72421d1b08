"""Command-line front end: a thin client of the HTTP service.

Every subcommand builds a request, sends it to the service app in-process
(no socket involved) and writes the response body verbatim to stdout or
--out. `serve` runs the same app over a real socket.

Exit codes: 0 success, 2 usage or config error, 3 domain error, 4 oracle
numeric failure, 5 failed validation in `validate`.
"""

import argparse
import asyncio
import sys
from pathlib import Path

import httpx

from ._version import VERSION
from .config import parse_config_text
from .errors import ConfigError
from .runs import COMMANDS
from .service import VALIDATION_HEADER, app

_EXIT_BY_KIND = {"config": 2, "domain": 3, "oracle": 4}

_GRID_FLAGS = {
    "levels": (
        ("--b-min-t", "levels_B_min_T", float, "grid start, T"),
        ("--b-max-t", "levels_B_max_T", float, "grid end, T"),
        ("--points", "levels_B_points", int, "grid size"),
    ),
    "sweep-detuning": (
        ("--x-min", "sweep_x_min", float, "grid start, hbar*delta/mu_c"),
        ("--x-max", "sweep_x_max", float, "grid end, hbar*delta/mu_c"),
        ("--points", "sweep_x_points", int, "grid size"),
    ),
    "sweep-temperature": (
        ("--t-min-k", "sweep_T_min_K", float, "grid start, K"),
        ("--t-max-k", "sweep_T_max_K", float, "grid end, K"),
        ("--points", "sweep_T_points", int, "grid size"),
    ),
    "sweep-qf": (
        ("--q-min", "sweep_Q_min", float, "quality-factor grid start"),
        ("--q-max", "sweep_Q_max", float, "quality-factor grid end"),
        ("--q-points", "sweep_Q_points", int, "quality-factor grid size"),
        ("--f-min-hz", "sweep_f_min_hz", float, "frequency grid start, Hz"),
        ("--f-max-hz", "sweep_f_max_hz", float, "frequency grid end, Hz"),
        ("--f-points", "sweep_f_points", int, "frequency grid size"),
    ),
}

_COMMAND_HELP = {
    "levels": "Zeeman level energies and transition frequencies over a field grid",
    "steady": "steady-state phonon number and the full coupling chain",
    "sweep-detuning": "steady phonon number versus dimensionless detuning",
    "sweep-temperature": "steady phonon number versus initial temperature",
    "sweep-qf": "steady phonon number over a (Q, f) plane",
    "master-eq": "truncated-Fock master-equation oracle versus the closed form",
    "validate": "regime validity checks",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beccool",
        description="Steady-state cooling calculator for a magnet-tipped oscillator "
        "coupled to trapped condensate atoms.",
    )
    parser.add_argument("--version", action="version", version=f"beccool {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="config file (key = value lines, or JSON)")
    common.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json", "text"], help="output format")
    common.add_argument("--threads", type=int, default=1, metavar="N",
                        help="worker threads for sweeps (result is independent of N)")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one config key (repeatable)")

    for command in COMMANDS:
        cmd_parser = sub.add_parser(command, parents=[common], help=_COMMAND_HELP[command])
        for flag, key, typ, help_text in _GRID_FLAGS.get(command, ()):
            cmd_parser.add_argument(flag, dest=key, type=typ, default=None, help=help_text)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _load_config(args: argparse.Namespace) -> dict:
    raw: dict = {}
    if args.config is not None:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        raw = parse_config_text(path.read_text(encoding="utf-8"))
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        text = item.replace("=", " = ", 1)
        raw.update(parse_config_text(text))
    for _, key, _, _ in _GRID_FLAGS.get(args.command, ()):
        value = getattr(args, key, None)
        if value is not None:
            raw[key] = value
    return raw


async def _post(command: str, request: dict) -> httpx.Response:
    """Send one request to the service app in-process, no socket involved."""
    transport = httpx.ASGITransport(app=app)
    async with httpx.AsyncClient(transport=transport, base_url="http://beccool.local") as client:
        return await client.post(f"/v1/{command}", json=request, timeout=None)


def _emit(body: bytes, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.buffer.write(body)
        sys.stdout.buffer.flush()
    else:
        Path(out_path).write_bytes(body)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        raw = _load_config(args)
    except ConfigError as exc:
        print(f"error (config): {exc}", file=sys.stderr)
        return 2

    request = {"config": raw, "format": args.format, "threads": min(max(1, args.threads), 256)}
    response = asyncio.run(_post(args.command, request))

    if response.status_code == 200:
        _emit(response.content, args.out)
        if args.command == "validate" and response.headers.get(VALIDATION_HEADER) == "0":
            return 5
        return 0

    try:
        error = response.json()["error"]
        kind, message = error["kind"], error["message"]
    except Exception:
        kind, message = "config", response.text
    print(f"error ({kind}): {message}", file=sys.stderr)
    return _EXIT_BY_KIND.get(kind, 1)


if __name__ == "__main__":
    sys.exit(main())
