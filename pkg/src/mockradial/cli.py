"""Command-line front end: classification, exact limits, radial verification,
identity suites, and sweep reports in JSON/CSV/text."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import gcd

from mpmath import mp, workdps

from . import verify
from .bigcomplex import BigComplex
from .errors import InvalidParams, MockRadialError, UnsupportedCase
from .exact import CyclotomicNumber, embed_complex, set_order_cap
from .radial import (CaseLabel, SUPPORTED_LABELS, SpecializationParams,
                     cusp_data, radial_limit)

SCHEMA = "mockradial/1"


def _exact_json(value: CyclotomicNumber, digits: int) -> dict:
    num = embed_complex(value, digits)
    return {
        "order": value.order,
        "coeffs": [f"{c.numerator}/{c.denominator}" if c.denominator != 1
                   else str(c.numerator) for c in value.coeffs],
        "decimal": num.to_str(digits),
        "precision": digits,
    }


def _numeric_json(value: BigComplex) -> dict:
    return {"value": value.to_str(value.digits), "precision": value.digits}


def _emit(payload, fmt: str, out):
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2))
        out.write("\n")
    elif fmt == "text":
        _emit_text(payload, out)
    else:
        raise ValueError("csv output is only available for scan")


def _emit_text(payload, out, indent=0):
    pad = "  " * indent
    if isinstance(payload, dict):
        for key in sorted(payload):
            value = payload[key]
            if isinstance(value, (dict, list)):
                out.write(f"{pad}{key}:\n")
                _emit_text(value, out, indent + 1)
            else:
                out.write(f"{pad}{key}: {value}\n")
    elif isinstance(payload, list):
        for item in payload:
            _emit_text(item, out, indent)
            if isinstance(item, dict):
                out.write(f"{pad}-\n")
    else:
        out.write(f"{pad}{payload}\n")


def _params(args) -> SpecializationParams:
    return SpecializationParams(args.a, args.b, args.A, args.B)


def _cmd_classify(args, out) -> int:
    cusp = cusp_data(_params(args), args.h, args.k)
    payload = {
        "schema": SCHEMA,
        "command": "classify",
        "a": args.a, "b": args.b, "A": args.A, "B": args.B,
        "h": cusp.h, "k": cusp.k,
        "label": cusp.label.value,
        "kprime": cusp.kprime,
        "Bprime": cusp.Bprime,
        "mu": str(cusp.mu),
        "inQ": cusp.in_Q,
    }
    _emit(payload, args.format, out)
    return 0


def _cmd_limit(args, out) -> int:
    result = radial_limit(_params(args), args.h, args.k, digits=args.precision)
    payload = {
        "schema": SCHEMA,
        "command": "limit",
        "a": args.a, "b": args.b, "A": args.A, "B": args.B,
        "h": result.cusp.h, "k": result.cusp.k,
        "label": result.label.value,
        "companion": result.companion.form,
        "mu": str(result.cusp.mu),
        "kprime": result.cusp.kprime,
        "Bprime": result.cusp.Bprime,
    }
    if result.direction_supported is not None:
        payload["direction_supported"] = result.direction_supported
    if result.exact is not None:
        payload["exact"] = _exact_json(result.exact, args.precision)
        if result.exact.is_rational():
            payload["exact_str"] = str(result.exact.as_rational())
    if result.numeric is not None:
        payload["numeric"] = _numeric_json(result.numeric)
    _emit(payload, args.format, out)
    if result.label not in SUPPORTED_LABELS:
        return 3
    return 0


def _cmd_verify_radial(args, out) -> int:
    schedule = verify.RadialSchedule.from_start(args.t_start, args.t_steps,
                                                args.precision)
    try:
        report = verify.radial_check(_params(args), args.h, args.k, schedule)
    except UnsupportedCase as exc:
        _emit({"schema": SCHEMA, "command": "verify-radial",
               "error": str(exc)}, args.format, out)
        return 3
    payload = {
        "schema": SCHEMA,
        "command": "verify-radial",
        "a": args.a, "b": args.b, "A": args.A, "B": args.B,
        "h": report.h, "k": report.k,
        "label": report.label.value,
        "residuals": [{"t": t, "residual": r} for t, r in report.residuals],
        "monotone_tail": report.monotone_tail,
        "final_residual": report.final_residual,
        "passed": report.passed,
    }
    _emit(payload, args.format, out)
    return 0 if report.passed else 1


def _cmd_check(args, out) -> int:
    ids = verify.IDENTITY_IDS if args.identity == "all" else (args.identity,)
    reports = []
    if args.jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            futures = [(i, pool.submit(verify.identity_check, ident,
                                       args.samples, args.seed, args.precision))
                       for i, ident in enumerate(ids)]
            reports = [f.result() for _, f in sorted(futures, key=lambda p: p[0])]
    else:
        for ident in ids:
            reports.append(verify.identity_check(ident, args.samples,
                                                 args.seed, args.precision))
    payload = {
        "schema": SCHEMA,
        "command": "check",
        "seed": args.seed,
        "reports": [{
            "identity": r.identity_id,
            "samples": r.sample_points,
            "max_residual": r.max_residual,
            "tolerance": r.tolerance,
            "passed": r.passed,
        } for r in reports],
    }
    _emit(payload, args.format, out)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_corollary(args, out) -> int:
    summary, records = verify.corollary_check(args.kmax)
    payload = {
        "schema": SCHEMA,
        "command": "corollary",
        "kmax": args.kmax,
        "summary": [{"k": k, "passed": ok} for k, ok in summary],
        "records": [{"k": r.k, "h": r.h, "passed": r.passed} for r in records],
    }
    _emit(payload, args.format, out)
    return 0 if all(ok for _, ok in summary) else 1


def _cmd_conjecture(args, out) -> int:
    records = verify.conjecture_check(args.kmax)
    failures = [r for r in records if r.passed is False]
    payload = {
        "schema": SCHEMA,
        "command": "conjecture",
        "kmax": args.kmax,
        "checked": len(records),
        "equal": sum(1 for r in records if r.passed),
        "counterexamples": [{
            "k": r.k,
            "q": f"zeta_{3 * r.k}^{r.q_exponent}",
            "x": r.x_descriptor,
            "lhs": _exact_json(r.lhs, args.precision),
            "rhs": _exact_json(r.rhs, args.precision),
        } for r in failures],
    }
    _emit(payload, args.format, out)
    return 0 if not failures else 1


def _scan_one(item):
    a, b, A, B, h, k, digits = item
    try:
        params = SpecializationParams(a, b, A, B)
    except InvalidParams:
        return None
    result = radial_limit(params, h, k, digits=digits)
    row = {
        "a": a, "b": b, "A": A, "B": B,
        "h": result.cusp.h, "k": result.cusp.k,
        "label": result.label.value,
        "kprime": result.cusp.kprime,
        "Bprime": result.cusp.Bprime,
        "mu": str(result.cusp.mu),
        "inQ": result.cusp.in_Q,
        "companion": result.companion.form,
        "exact_order": result.exact.order if result.exact is not None else "",
        "exact_coeffs": ";".join(str(c) for c in result.exact.coeffs)
                        if result.exact is not None else "",
        "numeric": result.numeric.to_str(min(digits, 30))
                   if result.numeric is not None else "",
    }
    return row


def _cmd_scan(args, out) -> int:
    items = []
    for b in range(1, args.b_max + 1):
        for a in range(0, b):
            if gcd(a, b) != 1 and not (a == 0 and b == 1):
                continue
            if b > 1 and a == 0:
                continue
            for A in range(0, args.A_max + 1):
                for B in range(1, args.B_max + 1):
                    if b == 1 and A % B == 0:
                        continue
                    for k in range(1, args.k_max + 1):
                        for h in range(1, k + 1):
                            if gcd(h, k) != 1:
                                continue
                            items.append((a, b, A, B, h, k, args.precision))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_one, items, chunksize=64))
    else:
        rows = [_scan_one(item) for item in items]
    rows = [r for r in rows if r is not None]
    fields = ["a", "b", "A", "B", "h", "k", "label", "kprime", "Bprime", "mu",
              "inQ", "companion", "exact_order", "exact_coeffs", "numeric"]
    if args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    else:
        _emit({"schema": SCHEMA, "command": "scan", "rows": rows},
              args.format, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mockradial",
        description="Exact radial limits of specializations of the odd-order "
                    "universal mock theta function, with numeric verification.")
    parser.add_argument("--precision", type=int, default=50,
                        help="significant digits for numeric output (default 50)")
    parser.add_argument("--format", choices=("json", "csv", "text"),
                        default="json")
    parser.add_argument("--out", default=None, help="write the report to PATH")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for sweep commands")
    parser.add_argument("--order-cap", type=int, default=600,
                        help="largest permitted cyclotomic order")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tuple_args(p):
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--A", type=int, required=True)
        p.add_argument("--B", type=int, required=True)
        p.add_argument("--h", type=int, required=True)
        p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("classify", help="case label and cusp data for one tuple")
    add_tuple_args(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("limit", help="exact radial limit for one tuple")
    add_tuple_args(p)
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("verify-radial",
                       help="numeric |F - M - Q| along a radial schedule")
    add_tuple_args(p)
    p.add_argument("--t-start", type=float, default=0.2)
    p.add_argument("--t-steps", type=int, default=9)
    p.set_defaults(func=_cmd_verify_radial)

    p = sub.add_parser("check", help="identity residual suites")
    p.add_argument("--identity", required=True,
                   choices=verify.IDENTITY_IDS + ("all",))
    p.add_argument("--samples", type=int, default=25)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("corollary", help="exact fifth-order corollary sweep")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=_cmd_corollary)

    p = sub.add_parser("conjecture", help="exact conjecture evidence sweep")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("scan", help="sweep tuples and emit one record each")
    p.add_argument("--b-max", type=int, default=4)
    p.add_argument("--A-max", type=int, default=2)
    p.add_argument("--B-max", type=int, default=4)
    p.add_argument("--k-max", type=int, default=6)
    p.set_defaults(func=_cmd_scan)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.precision < 10:
        parser.error("--precision must be at least 10")
    if args.format == "csv" and args.command != "scan":
        sys.stderr.write("csv output is only available for scan\n")
        return 2
    set_order_cap(args.order_cap)
    buffer = io.StringIO()
    try:
        code = args.func(args, buffer)
    except (InvalidParams, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except UnsupportedCase as exc:
        sys.stderr.write(f"unsupported: {exc}\n")
        return 3
    except MockRadialError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    text = buffer.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
