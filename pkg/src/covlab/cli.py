"""Command-line interface.

Every subcommand builds the same request model the HTTP endpoints
accept and either calls the in-process handler or, with --server,
posts to a running service, so scripted runs behave identically in
both transports.  Exit codes: 0 success, 1 usage or config error,
2 validation or internal failure, 3 budget exhausted on a run that
asked for an exact or exhaustive answer.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigInvalid, CovlabError, MalformedSpec
from .service.app import (
    handle_cells,
    handle_chain_witness,
    handle_cov,
    handle_factorize,
    handle_phi,
    handle_report,
    handle_support_cells,
    handle_support_witness,
    handle_tower,
    handle_validate,
)
from .service.schemas import (
    CellsRequest,
    ChainWitnessRequest,
    CovRequest,
    FactorizeRequest,
    PhiRequest,
    ReportRequest,
    SupportCellsRequest,
    SupportWitnessRequest,
    TowerRequest,
    ValidateRequest,
)

__all__ = ["main"]

# path -> (handler, exclude None fields when dumping in-process)
_ROUTES = {
    "/validate": (handle_validate, False),
    "/cov": (handle_cov, True),
    "/theorem1/factorize": (handle_factorize, False),
    "/theorem1/cells": (handle_cells, False),
    "/theorem1/witness": (handle_chain_witness, False),
    "/theorem2/cells": (handle_support_cells, False),
    "/theorem2/cov-per-cell": (handle_support_cells, False),
    "/theorem2/witness": (handle_support_witness, False),
    "/phi": (handle_phi, False),
    "/tower": (handle_tower, False),
    "/report": (handle_report, False),
}


class _RemoteError(CovlabError):
    """Error payload relayed from a --server endpoint."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are exit code 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _json_arg(text: str, what: str):
    """Parse an argument as inline JSON, else as a path to a JSON file."""
    try:
        return json.loads(text)
    except ValueError:
        pass
    try:
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigInvalid(f"{what} is neither inline JSON nor a readable file: {exc}")
    except ValueError as exc:
        raise MalformedSpec(f"{what} file {text!r} is not valid JSON: {exc}")


def _spec_arg(text: str) -> dict:
    doc = _json_arg(text, "group spec")
    if not isinstance(doc, dict):
        raise MalformedSpec(f"group spec must be a JSON object, got {type(doc).__name__}")
    return doc


def _list_arg(text: str, what: str) -> list:
    doc = _json_arg(text, what)
    if not isinstance(doc, list):
        raise MalformedSpec(f"{what} must be a JSON array, got {type(doc).__name__}")
    return doc


def _label_arg(text: str) -> list[int]:
    try:
        doc = json.loads(text)
    except ValueError:
        try:
            doc = [int(tok) for tok in text.split(",") if tok.strip() != ""]
        except ValueError:
            raise MalformedSpec(f"label must be a JSON array or comma list, got {text!r}")
    if isinstance(doc, int) and not isinstance(doc, bool):
        doc = [doc]
    if not isinstance(doc, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in doc
    ):
        raise MalformedSpec(f"label must be a list of integers, got {text!r}")
    return doc


def _call(args, path: str, req) -> dict:
    if args.server:
        import httpx

        url = args.server.rstrip("/") + path
        resp = httpx.post(url, json=req.model_dump(), timeout=None)
        try:
            body = resp.json()
        except ValueError:
            body = None
        if resp.status_code >= 400:
            if isinstance(body, dict) and "message" in body:
                raise _RemoteError(body["message"], int(body.get("exit_code", 2)))
            raise _RemoteError(f"server returned {resp.status_code}: {resp.text}", 2)
        return body
    handler, exclude_none = _ROUTES[path]
    return handler(req).model_dump(exclude_none=exclude_none)


def _deliver(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(payload, args) -> None:
    _deliver(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)


def _rows_exhausted(rows: list[dict]) -> bool:
    return any(
        row["metric"] in ("proven_optimal", "complete") and int(row["value"]) == 0
        for row in rows
    )


def _cmd_validate(args) -> int:
    payload = _call(args, "/validate", ValidateRequest(group=_spec_arg(args.group)))
    _emit_json(payload, args)
    return 0


def _cmd_cov(args) -> int:
    mode = "greedy" if args.greedy else "bounds" if args.bounds else "exact"
    req = CovRequest(
        group=_spec_arg(args.group),
        set=_list_arg(args.set, "element set"),
        mode=mode,
        budget=args.budget,
        canonical=args.canonical,
    )
    payload = _call(args, "/cov", req)
    _emit_json(payload, args)
    if mode == "exact" and not payload.get("proven_optimal", False):
        return 3
    return 0


def _cmd_factorize(args) -> int:
    req = FactorizeRequest(
        group=_spec_arg(args.group),
        chain=_spec_arg(args.chain) if args.chain else None,
        element=_json_arg(args.element, "element"),
    )
    _emit_json(_call(args, "/theorem1/factorize", req), args)
    return 0


def _cmd_cells(args) -> int:
    req = CellsRequest(
        group=_spec_arg(args.group),
        chain=_spec_arg(args.chain) if args.chain else None,
        offset_bound=args.offset_bound,
        max_support=args.max_support,
        include_members=args.members,
    )
    _emit_json(_call(args, "/theorem1/cells", req), args)
    return 0


def _cmd_chain_witness(args) -> int:
    req = ChainWitnessRequest(
        group=_spec_arg(args.group),
        chain=_spec_arg(args.chain) if args.chain else None,
        k=_list_arg(args.k, "excluded set K"),
        s=_label_arg(args.s),
        offset_bound=args.offset_bound,
        max_support=args.max_support,
        threads=args.threads,
    )
    _emit_json(_call(args, "/theorem1/witness", req), args)
    return 0


def _cmd_support_cells(args, force_cov: bool) -> int:
    req = SupportCellsRequest(
        group=_spec_arg(args.group),
        max_n=args.max_n,
        cov_per_cell=force_cov or getattr(args, "cov_per_cell", False),
        budget=args.budget,
    )
    path = "/theorem2/cov-per-cell" if force_cov else "/theorem2/cells"
    payload = _call(args, path, req)
    _emit_json(payload, args)
    if any(row.get("proven_optimal") is False for row in payload["rows"]):
        return 3
    return 0


def _cmd_support_witness(args) -> int:
    req = SupportWitnessRequest(
        group=_spec_arg(args.group),
        k=_list_arg(args.k, "excluded set K"),
        n=args.n,
        offset_bound=args.offset_bound,
        max_support=args.max_support,
        threads=args.threads,
    )
    _emit_json(_call(args, "/theorem2/witness", req), args)
    return 0


def _cmd_phi(args) -> int:
    mode = "random" if args.random else "exhaustive"
    req = PhiRequest(
        group=_spec_arg(args.group),
        n=args.n,
        mode=mode,
        iterations=args.iters,
        seed=args.seed,
        budget=args.budget,
    )
    payload = _call(args, "/phi", req)
    _emit_json(payload, args)
    if mode == "exhaustive" and not payload["complete"]:
        return 3
    return 0


def _cmd_tower(args) -> int:
    req = TowerRequest(
        family=_spec_arg(args.family),
        n_values=_label_arg(args.n_values),
        budget=args.budget,
        timing=args.timing,
    )
    payload = _call(args, "/tower", req)
    if args.format == "csv":
        _deliver(payload["text"], args.out)
    else:
        _emit_json(payload["rows"], args)
    return 3 if _rows_exhausted(payload["rows"]) else 0


def _cmd_report(args) -> int:
    cfg = _json_arg(args.config, "experiment config")
    if not isinstance(cfg, dict):
        raise ConfigInvalid(f"experiment config must be a JSON object, got {type(cfg).__name__}")
    for key, value in (
        ("seed", args.seed),
        ("threads", args.threads if args.threads != 1 else None),
        ("budget", args.budget),
    ):
        if value is not None:
            cfg[key] = value
    if args.timing:
        cfg["timing"] = True
    req = ReportRequest(config=cfg, format=args.format)
    payload = _call(args, "/report", req)
    if not payload["rows"] and not args.allow_empty:
        raise ConfigInvalid("experiment produced no rows (pass --allow-empty to accept)")
    _deliver(payload["text"], args.out)
    return 3 if _rows_exhausted(payload["rows"]) else 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for any sampling")
    common.add_argument("--threads", type=int, default=1, help="worker cap for verification")
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--server", default=None, help="base URL of a running service")
    common.add_argument("--timing", action="store_true", help="measure wall times in reports")

    parser = _Parser(prog="covlab", description="group partition and covering workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a group spec")
    p.add_argument("--group", required=True)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("cov", parents=[common], help="covering number of a subset")
    p.add_argument("--group", required=True)
    p.add_argument("--set", required=True, help="JSON array of elements (inline or file)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--greedy", action="store_true")
    mode.add_argument("--bounds", action="store_true")
    p.add_argument("--canonical", action="store_true", help="lexicographically least witness")
    p.set_defaults(func=_cmd_cov)

    t1 = sub.add_parser("theorem1", help="chain factorization tools").add_subparsers(
        dest="subcommand", required=True
    )
    p = t1.add_parser("factorize", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--chain", default=None)
    p.add_argument("--element", required=True)
    p.set_defaults(func=_cmd_factorize)
    p = t1.add_parser("cells", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--chain", default=None)
    p.add_argument("--offset-bound", type=int, default=10)
    p.add_argument("--max-support", type=int, default=None)
    p.add_argument("--members", action="store_true", help="list cell members")
    p.set_defaults(func=_cmd_cells)
    p = t1.add_parser("witness", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--chain", default=None)
    p.add_argument("--k", required=True, help="JSON array of excluded elements")
    p.add_argument("--s", required=True, help="cell label, JSON array or comma list")
    p.add_argument("--offset-bound", type=int, default=10)
    p.add_argument("--max-support", type=int, default=None)
    p.set_defaults(func=_cmd_chain_witness)

    t2 = sub.add_parser("theorem2", help="support partition tools").add_subparsers(
        dest="subcommand", required=True
    )
    p = t2.add_parser("cells", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--cov-per-cell", action="store_true")
    p.set_defaults(func=lambda a: _cmd_support_cells(a, force_cov=False))
    p = t2.add_parser("witness", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--k", required=True, help="JSON array of excluded elements")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--offset-bound", type=int, default=10)
    p.add_argument("--max-support", type=int, default=None)
    p.set_defaults(func=_cmd_support_witness)
    p = t2.add_parser("cov-per-cell", parents=[common])
    p.add_argument("--group", required=True)
    p.add_argument("--max-n", type=int, default=None)
    p.set_defaults(func=lambda a: _cmd_support_cells(a, force_cov=True))

    p = sub.add_parser("phi", parents=[common], help="partition exploration bound")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--random", action="store_true")
    p.add_argument("--iters", type=int, default=100)
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("tower", parents=[common], help="sweep a group family")
    p.add_argument("--family", required=True, help="family spec, e.g. base and m range")
    p.add_argument("--n-values", default="[1]", help="support sizes, JSON array or comma list")
    p.set_defaults(func=_cmd_tower)

    p = sub.add_parser("report", parents=[common], help="run an experiment config")
    p.add_argument("--config", required=True)
    p.add_argument("--allow-empty", action="store_true")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CovlabError as exc:
        print(f"covlab: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # contract: internal failures report as exit 2
        print(f"covlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
