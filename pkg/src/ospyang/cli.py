"""Command-line client for the verification suite.

The CLI is a thin layer over the service: it builds a SuiteConfig, runs it
either against a remote server (--server) or through the same code path
the service endpoint uses, and renders the Report.

Exit codes: 0 suite passed, 1 any check failed, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from .service.models import CHECK_NAMES, Report, SuiteConfig


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ospyang",
        description="Exact verification suite for the osp(1|2) super Yangian "
        "double and its universal R-matrix",
    )
    sub = p.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run verification checks (default)")
    _add_run_args(run)
    _add_run_args(p)  # plain `ospyang --check ybe` also works

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return p


def _add_run_args(p):
    p.add_argument(
        "--check",
        action="append",
        default=None,
        help=f"check to run (repeatable; one of {', '.join(CHECK_NAMES)}); "
        "default: all",
    )
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--samples", type=int, default=25)
    p.add_argument("--trunc-d", type=int, default=6, dest="trunc_d")
    p.add_argument("--mode-cutoff", type=int, default=60, dest="mode_cutoff")
    p.add_argument("--product-cutoff", type=int, default=200, dest="product_cutoff")
    p.add_argument("--window-mode", type=int, default=None, dest="window_mode")
    p.add_argument("--window-degree", type=int, default=None, dest="window_degree")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--output", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--dump", default=None, help="write matrix/trace dumps to this path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--server", default=None, help="URL of a running service")


def config_from_args(args) -> SuiteConfig:
    checks = args.check
    if checks:
        flat = []
        for c in checks:
            flat.extend(x.strip() for x in c.split(",") if x.strip())
        checks = flat
    else:
        checks = list(CHECK_NAMES)
    return SuiteConfig(
        checks=checks,
        seed=args.seed,
        samples=args.samples,
        trunc_d=args.trunc_d,
        mode_cutoff=args.mode_cutoff,
        product_cutoff=args.product_cutoff,
        window_mode=args.window_mode,
        window_degree=args.window_degree,
        tolerance=args.tolerance,
        output=args.output,
        dump=args.dump,
        jobs=args.jobs,
    )


def render(report: Report, cfg: SuiteConfig, out_path=None) -> None:
    if cfg.output == "json":
        payload = report.model_dump()
        text = json.dumps(payload, sort_keys=True, indent=2, default=str) + "\n"
    else:
        text = report.to_text()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run_remote(server: str, cfg: SuiteConfig) -> Report:
    import httpx

    resp = httpx.post(f"{server.rstrip('/')}/run", json=cfg.model_dump(), timeout=3600)
    resp.raise_for_status()
    return Report.model_validate(resp.json())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    try:
        cfg = config_from_args(args)
    except ValidationError as exc:
        for err in exc.errors():
            sys.stderr.write(f"configuration error: {err['msg']}\n")
        return 2
    except ValueError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2

    try:
        if args.server:
            report = run_remote(args.server, cfg)
        else:
            from .service.runner import run_suite, write_dump

            report = run_suite(cfg)
            if cfg.dump:
                write_dump(cfg, cfg.dump)
    except ValueError as exc:
        sys.stderr.write(f"configuration error: {exc}\n")
        return 2

    render(report, cfg, args.out)
    return 0 if report.verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
