"""Command-line front end: ``mvsp <subcommand> --field p^n ...``.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
input error, 3 internal inconsistency (a result contradicting the theory).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys

from . import __version__
from .curves import CurveSpec, curve_report
from .errors import InternalConsistencyError, MvspError, ParseError
from .gf import format_element, parse_element, parse_field_spec
from .linearized import SubspaceBasis, recognize
from .mvsp import (
    SELECTORS,
    mills_decompose,
    millsbor_check,
    p4_families,
    predicted_value_set,
)
from .polyring import format_poly, parse_poly
from .search import (
    SCHEMA,
    SearchTask,
    affine_classes,
    default_budget,
    degree_bound_audit,
    enumerate_mvsps,
    run_to_dir,
    verify_conjecture,
)
from .valueset import char_sum, decompose_structure, fiber_sizes, is_mvsp, value_set

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def emit(obj: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    obj = {"schema": SCHEMA, **obj}
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    elif fmt == "jsonl":
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")
    else:
        for key, val in obj.items():
            if isinstance(val, (dict, list)):
                val = json.dumps(val)
                if len(val) > 120:
                    val = val[:117] + "..."
            out.write(f"{key:>18}: {val}\n")


def _poly(ctx, text):
    return parse_poly(ctx, text)


def _elements(ctx, text: str) -> list[int]:
    return [parse_element(ctx, t) for t in text.split(",") if t.strip()]


def _shard(text: str) -> tuple[int, int]:
    try:
        i, t = (int(s) for s in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/t, got {text!r}")
    if not (t >= 1 and 0 <= i < t):
        raise argparse.ArgumentTypeError(f"shard index must satisfy 0 <= i < t, got {text!r}")
    return i, t


# -- subcommands ------------------------------------------------------------------


def cmd_field(args) -> int:
    ctx = parse_field_spec(args.field)
    out = ctx.to_dict()
    if args.elements:
        out["elements"] = [{"code": a, "power": format_element(ctx, a, "power")} for a in range(ctx.q)]
    emit(out, args.format)
    return EXIT_OK


def _describe(ctx, F, as_linearized=None) -> dict:
    out = {"field": ctx.spec(), "poly": format_poly(F), "degree": F.degree}
    if as_linearized:
        out["linearized"] = list(recognize(F, as_linearized).lcoeffs)
    V = value_set(F)
    out["value_set"] = V
    out["size"] = len(V)
    out["fibers"] = {str(k): v for k, v in fiber_sizes(F).items()}
    out["mvsp"] = is_mvsp(F)
    out["minimal_size"] = (ctx.q - 1) // F.degree + 1
    if out["mvsp"] and len(V) > 2:
        out["certificate"] = mills_decompose(F).to_json()
        wit = decompose_structure(ctx, V)
        out["structure"] = wit.to_json() if wit else None
    return out


def cmd_test(args) -> int:
    ctx = parse_field_spec(args.field)
    out = _describe(ctx, _poly(ctx, args.poly), args.as_linearized)
    emit(out, args.format)
    return EXIT_OK if out["mvsp"] else EXIT_NEGATIVE


def cmd_cert(args) -> int:
    ctx = parse_field_spec(args.field)
    F = _poly(ctx, args.poly)
    res = millsbor_check(F)
    if res is None:
        emit({"poly": format_poly(F), "mvsp": False}, args.format)
        return EXIT_NEGATIVE
    emit({"poly": format_poly(F), "mvsp": True, "certificate": mills_decompose(F).to_json()}, args.format)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    ctx = parse_field_spec(args.field)
    task = SearchTask(ctx, args.min_deg, args.max_deg, args.shard, monic_only=args.monic,
                      budget=args.budget)
    if args.out:
        report, resumed = run_to_dir(task, args.out, args.workers)
    else:
        report, resumed = enumerate_mvsps(task, args.workers), False
    audit = degree_bound_audit(report)
    summary = {"task": report.task, "counts": report.counts, "hits": len(report.hits),
               "violations": report.violations, "degree_audit": audit, "resumed": resumed}
    if args.classes:
        summary["classes"] = affine_classes(ctx, report.hits)
    if args.format == "jsonl" and not args.out:
        for h in report.hits:
            sys.stdout.write(json.dumps(h, sort_keys=True) + "\n")
    else:
        emit(summary, args.format)
    bad = report.violations or audit["violations"]
    return EXIT_INTERNAL if bad else EXIT_OK


def cmd_conjecture(args) -> int:
    ctx = parse_field_spec(args.field)
    U = SubspaceBasis(ctx, args.k, tuple(_elements(ctx, args.basis)))
    res = verify_conjecture(ctx, U, args.v, args.budget, args.mode)
    if not args.full:
        for key in ("lhs", "rhs"):
            res.pop(key)
    emit(res, args.format)
    return EXIT_OK if res["equal"] else EXIT_NEGATIVE


def _curve(text: str, d):
    """Split ``y^d = f`` into (d, f-text); a bare f needs --d."""
    if "=" not in text:
        if d is None:
            raise ValueError("give --d or write the curve as 'y^d = f'")
        return d, text
    lhs, rhs = text.split("=", 1)
    m = re.fullmatch(r"\s*y\s*(?:\^\s*(\d+))?\s*", lhs)
    if not m:
        raise ParseError("left side must be y^d", text, 0)
    dd = int(m.group(1) or 1)
    if d is not None and d != dd:
        raise ValueError(f"--d {d} disagrees with y^{dd}")
    return dd, rhs


def cmd_fnc(args) -> int:
    ctx = parse_field_spec(args.field)
    d, text = _curve(args.poly, args.d)
    out = curve_report(CurveSpec(d, _poly(ctx, text)))
    out["field"] = ctx.spec()
    out["nonclassical"] = out["fnc_direct"]
    if out["fnc_by_mvsp"] is not None and out["fnc_by_mvsp"] != out["fnc_direct"]:
        emit(out, args.format)
        return EXIT_INTERNAL
    emit(out, args.format)
    return EXIT_OK if out["fnc_direct"] else EXIT_NEGATIVE


def cmd_families(args) -> int:
    ctx = parse_field_spec(args.field)
    params = {}
    for key in ("v", "t"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    for key in ("a", "b", "c", "d", "e", "f", "beta"):
        val = getattr(args, key)
        if val is not None:
            params[key] = parse_element(ctx, val)
    F = p4_families(ctx, args.family, **params)
    predicted = predicted_value_set(ctx, args.family, **params)
    out = {"family": args.family, "params": params, "poly": format_poly(F),
           "degree": F.degree, "predicted_value_set": predicted}
    V = value_set(F)
    out["value_set_matches"] = V == predicted
    out["mvsp"] = is_mvsp(F)
    ok = out["mvsp"] and out["value_set_matches"]
    if ok and len(V) > 2:
        out["millsbor"] = millsbor_check(F) is not None
        ok = out["millsbor"]
    emit(out, args.format)
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_charsum(args) -> int:
    ctx = parse_field_spec(args.field)
    N = _poly(ctx, args.poly)
    out = {"poly": format_poly(N), "r": args.r, **char_sum(N, args.r)}
    emit(out, args.format)
    return EXIT_OK if out["within"] else EXIT_INTERNAL


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mvsp", allow_abbrev=False,
                                     description="Minimal value set polynomials over finite fields.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--field", required=True, help="p^n or p^n/m0,m1,... (modulus, ascending)")
        p.add_argument("--format", choices=("json", "jsonl", "table"), default="json")
        p.set_defaults(func=func)
        return p

    p = add("field", cmd_field, "describe the field")
    p.add_argument("--elements", action="store_true", help="list codes with generator powers")

    p = add("test", cmd_test, "value set, minimality, certificate and structure of a polynomial")
    p.add_argument("poly")
    p.add_argument("--as-linearized", type=int, metavar="K", help="also print p^K-linearized coefficients")

    p = add("cert", cmd_cert, "Mills-Borges certificate")
    p.add_argument("poly")

    budget = int(os.environ.get("MVSP_BUDGET", default_budget()))
    p = add("enumerate", cmd_enumerate, "exhaustive MVSP scan")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--min-deg", type=int, default=1)
    p.add_argument("--shard", type=_shard, default=(0, 1), metavar="I/T")
    p.add_argument("--out", help="directory for shard JSONL files and manifest")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--monic", action="store_true", help="monic candidates only")
    p.add_argument("--classes", action="store_true", help="report affine equivalence classes")
    p.add_argument("--budget", type=int, default=budget)

    p = add("conjecture", cmd_conjecture, "compare P(U^v, q) with its predicted power form")
    p.add_argument("--basis", required=True, help="comma-separated elements (codes or g^k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--mode", choices=("auto", "exhaustive", "linear"), default="auto")
    p.add_argument("--budget", type=int, default=budget)
    p.add_argument("--full", action="store_true", help="include both polynomial lists")

    p = add("fnc", cmd_fnc, "Frobenius nonclassicality of y^d = f(x)")
    p.add_argument("--d", type=int)
    p.add_argument("poly", help="f, or the whole curve as 'y^d = f'")

    p = add("families", cmd_families, "members of the five families over F_{p^4}")
    p.add_argument("--family", choices=SELECTORS, required=True)
    p.add_argument("--v", type=int)
    p.add_argument("--t", type=int)
    for key in ("a", "b", "c", "d", "e", "f", "beta"):
        p.add_argument(f"--{key}")

    p = add("charsum", cmd_charsum, "character sum against the Weil bound")
    p.add_argument("--r", type=int, required=True, help="character order")
    p.add_argument("poly")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"internal inconsistency: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ParseError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MvspError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
