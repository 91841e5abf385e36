"""Command-line front end.

    qbailey compute configsum --p 2 --pp 5 --r 0 --s 2 --b 1 --L 7
    qbailey compute stringfunc --p 1 --pp 3 --m 2 --l 0 --order 10
    qbailey verify rr --order 200
    qbailey verify cbp-cor42 --manifest grid
    qbailey verify bfid --p1 2 --pp1 3 --p2 1 --pp2 3 --b 1 --s 1 --l 0
    qbailey oracle paths --p 3 --pp 5 --s 2 --b 1 --c 2 --L 13
    qbailey list

Parameters that have no dedicated flag (eta, j, k, i, delta, N, sigma,
alpha, beta, pair, rho1, rho2, which, identity, ...) are passed to verify
as `--name value`.  Structured output is one JSON record per line.

Exit status: 0 when everything passed, 1 when a check failed, 2 on a
precondition or budget error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .configsum import X, PreconditionError
from .fermion import fermionic_X
from .report import BUDGET, PASS, IdentityReport
from .series import INF, BudgetExceeded, GridError, OrderError, QSeries
from .stringfunc import parafermion_char, string_fn
from . import verify

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    order: object
    denom: int = 4
    window: int | None = None
    budget: int | None = None
    parallel: int = 1
    fmt: str = "structured"

    def __post_init__(self):
        if self.order is not None and self.order <= 0:
            raise PreconditionError("order must be positive")
        if self.denom < 1:
            raise PreconditionError("the grid denominator must be at least 1")
        if self.window is not None and self.window < 1:
            raise PreconditionError("window must be at least 1")

    def apply_env(self):
        # sum_converging reads these at call time; worker processes inherit them
        if self.window is not None:
            os.environ["QBAILEY_WINDOW"] = str(self.window)
        if self.budget is not None:
            os.environ["QBAILEY_BUDGET"] = str(self.budget)


def _coerce(text: str):
    for conv in (int, lambda t: json.loads(t)):
        try:
            return conv(text)
        except (ValueError, json.JSONDecodeError):
            pass
    return text


def _extra_params(tokens: list[str]) -> dict:
    out, i = {}, 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--"):
            raise PreconditionError(f"unexpected argument {tok!r}")
        key = tok[2:].replace("-", "_")
        if "=" in key:
            key, val = key.split("=", 1)
            i += 1
        elif i + 1 < len(tokens) and not tokens[i + 1].startswith("--"):
            val = tokens[i + 1]
            i += 2
        else:
            val, i = "true", i + 1
        out[key] = _coerce(val)
    return out


NAMED = ("p", "pp", "m", "l", "r", "s", "b", "c", "L", "p1", "pp1", "p2", "pp2")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qbailey", description="Exact q-series identities.")
    common = argparse.ArgumentParser(add_help=False)
    for name in NAMED:
        common.add_argument(f"--{name}", type=int)
    common.add_argument("--order", type=verify.parse_order, help='truncation order, "n" or "n/d"')
    common.add_argument("--denom", type=int, default=4, help="exponent grid denominator of the output")
    common.add_argument("--window", type=int, help="quiet shells before an infinite sum stops")
    common.add_argument("--budget", type=int, help="maximum number of shells of an infinite sum")
    common.add_argument("--parallel", type=int, default=1, help="worker processes for suites")
    common.add_argument("--format", dest="fmt", choices=("human", "structured"), default="structured")
    sub = ap.add_subparsers(dest="verb", required=True)
    c = sub.add_parser("compute", parents=[common], help="print the coefficients of an object")
    c.add_argument("kind", choices=("configsum", "stringfunc", "fermionic-x", "branching", "parafermion"))
    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("identity", help='registered identity, or "all" with --manifest')
    v.add_argument("--manifest", help="manifest name (e.g. grid) or path to a JSON manifest")
    o = sub.add_parser("oracle", parents=[common], help="brute-force enumeration against the formulas")
    o.add_argument("kind", choices=("paths", "hooks", "partitions"))
    o.add_argument("--modulus", type=int, default=5)
    o.add_argument("--residues", default="1,4")
    o.add_argument("--distinct", action="store_true")
    sub.add_parser("list", parents=[common], help="list the registered identities")
    return ap


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise PreconditionError("missing " + ", ".join(f"--{n}" for n in missing))
    return [getattr(args, n) for n in names]


def compute_object(kind: str, args, order) -> QSeries:
    if kind == "configsum":
        p, pp, r, s, b, L = _need(args, "p", "pp", "r", "s", "b", "L")
        out = X(p, pp, r, s, L, b)
        return out if order in (None, INF) else out.truncate(order)
    if kind == "fermionic-x":
        p, pp, r, s, b, L = _need(args, "p", "pp", "r", "s", "b", "L")
        out = fermionic_X(p, pp, r, s, b, L)
        return out if order in (None, INF) else out.truncate(order)
    order = Fraction(20) if order in (None, INF) else order
    if kind == "stringfunc":
        p, pp, m, l = _need(args, "p", "pp", "m", "l")
        return string_fn(p, pp, m, l, order)
    if kind == "parafermion":
        p, pp, m, l = _need(args, "p", "pp", "m", "l")
        return parafermion_char(p, pp, m, l, order)
    if kind == "branching":
        p1, pp1, p2, pp2, r, l, s = _need(args, "p1", "pp1", "p2", "pp2", "r", "l", "s")
        return verify.branching_fn(p1, pp1, p2, pp2, r, l, s, order)
    raise PreconditionError(f"unknown object {kind!r}")


def _on_grid(series: QSeries, denom: int) -> list[tuple[Fraction, int]]:
    items = series.items()
    for e, _ in items:
        if (e * denom).denominator != 1:
            raise GridError(f"exponent {e} is not on the grid 1/{denom}")
    return items


def _emit(obj: dict, fmt: str, out):
    if fmt == "structured":
        out.write(json.dumps(obj, sort_keys=False) + "\n")
    else:
        out.write("  ".join(f"{k}={v}" for k, v in obj.items()) + "\n")


def cmd_compute(args, cfg: RunConfig, out) -> int:
    series = compute_object(args.kind, args, cfg.order)
    items = _on_grid(series, cfg.denom)
    order = series.order
    if cfg.fmt == "structured":
        _emit({"object": args.kind, "order": "exact" if order == INF else str(order),
               "terms": [[str(e), c] for e, c in items]}, "structured", out)
    else:
        for e, c in items:
            out.write(f"{e}\t{c}\n")
        if order != INF:
            out.write(f"O(q^{order})\n")
    return EXIT_OK


def _report_exit(reports: list[IdentityReport]) -> int:
    if any(r.status not in (PASS, "fail") for r in reports):
        return EXIT_ERROR
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def _write_reports(reports, cfg: RunConfig, out):
    for rep in reports:
        rec = rep.record()
        if cfg.fmt == "structured":
            _emit(rec, "structured", out)
        else:
            line = f"{rec['status']:>15}  {rec['identity']}  {json.dumps(rec['params'])}  order={rec['order']}"
            if "mismatch" in rec:
                m = rec["mismatch"]
                line += f"  first mismatch at q^{m['exponent']}: {m['lhs']} vs {m['rhs']}"
            if "detail" in rec:
                line += f"  [{rec['detail']}]"
            out.write(line + "\n")


def cmd_verify(args, extra: dict, cfg: RunConfig, out) -> int:
    if args.manifest:
        jobs = verify.load_manifest(args.manifest)
        if args.identity != "all":
            jobs = [j for j in jobs if j[0] == args.identity]
            if not jobs:
                raise PreconditionError(f"the manifest has no entries for {args.identity!r}")
        if cfg.order is not None:
            jobs = [(i, p, cfg.order) for i, p, _ in jobs]
    else:
        if args.identity not in verify.REGISTRY:
            raise PreconditionError(f"unknown identity {args.identity!r}; see the list command")
        params = {n: getattr(args, n) for n in NAMED if getattr(args, n) is not None}
        params.update(extra)
        jobs = [(args.identity, params, cfg.order)]
    reports = verify.run_entries(jobs, cfg.parallel)
    _write_reports(reports, cfg, out)
    return _report_exit(reports)


def cmd_oracle(args, cfg: RunConfig, out) -> int:
    if args.kind == "paths":
        rep = verify.check_paths(*_need(args, "p", "pp", "s", "b", "c", "L"))
    elif args.kind == "hooks":
        rep = verify.check_hooks(*_need(args, "p", "pp", "r", "s", "b", "L"))
    else:
        residues = tuple(int(x) for x in str(args.residues).split(",") if x.strip())
        order = 40 if cfg.order in (None, INF) else int(cfg.order)
        rep = verify.check_partitions(args.modulus, residues, order, args.distinct)
    _write_reports([rep], cfg, out)
    return _report_exit([rep])


def cmd_list(cfg: RunConfig, out) -> int:
    for name in sorted(verify.REGISTRY):
        check = verify.REGISTRY[name]
        order = check.default_order
        order = "exact" if order == INF else str(order)
        if cfg.fmt == "structured":
            _emit({"identity": name, "default_order": order, "description": check.description}, "structured", out)
        else:
            out.write(f"{name:22s} {check.description} (default order {order})\n")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = _parser()
    args, rest = ap.parse_known_args(argv)
    try:
        if rest and args.verb != "verify":
            raise PreconditionError(f"unrecognized arguments: {' '.join(rest)}")
        extra = _extra_params(rest)
        cfg = RunConfig(args.order, args.denom, args.window, args.budget, args.parallel, args.fmt)
        cfg.apply_env()
        if args.verb == "compute":
            return cmd_compute(args, cfg, out)
        if args.verb == "verify":
            return cmd_verify(args, extra, cfg, out)
        if args.verb == "oracle":
            return cmd_oracle(args, cfg, out)
        return cmd_list(cfg, out)
    except BudgetExceeded as exc:
        _emit({"status": BUDGET, "detail": str(exc)}, cfg_fmt(args), out)
        return EXIT_ERROR
    except (PreconditionError, GridError, OrderError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


def cfg_fmt(args) -> str:
    return getattr(args, "fmt", "structured")


if __name__ == "__main__":
    sys.exit(main())
