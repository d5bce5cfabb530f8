"""Command-line front end.

Exit codes: 0 success (an inapplicable bound is still a success), 2 bad
input, 3 simplex pivot budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import bounds
from .designs import (
    DEFAULT_TOLERANCE,
    ConfigurationError,
    harmonic_index_design_test,
    profile,
    tightness_check,
    load_configuration,
)
from .exact import RationalParseError, rational_from_string
from .lp.simplex import DEFAULT_MAX_PIVOTS, PivotLimitExceeded
from .lp.triangle import (
    DEFAULT_I_MAX_S,
    DEFAULT_L_MAX_P,
    DEFAULT_L_MAX_S,
    DEFAULT_TOL,
    build_instance,
    minimal_instance,
    triangle_bound,
    verify_proposition_33,
)

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3


class InputError(Exception):
    pass


def exact(q) -> dict:
    """Exact string plus a decimal rendering labelled approximate."""
    if q is None:
        return None
    q = Fraction(q)
    return {"exact": str(q), "approx": float(q)}


def _rational_arg(text):
    try:
        return rational_from_string(text)
    except RationalParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _report(r: bounds.BoundReport) -> dict:
    d = r.to_dict()
    d["value"] = exact(r.value)
    if r.witness is not None:
        d["witness"] = exact(r.witness)
    return d


def cmd_bound(args) -> dict:
    n, alpha = args.n, args.alpha
    reports = []
    try:
        if args.method in ("all", "gerzon"):
            reports.append(bounds.gerzon_bound(n))
        if args.method in ("all", "ls"):
            reports.append(bounds.lemmens_seidel_bound(n, alpha))
        if args.method in ("all", "okuda-yu"):
            reports.append(bounds.okuda_yu_bound(n, alpha))
            if alpha.numerator == 1 and alpha.denominator >= 2:
                reports.append(bounds.okuda_yu_integer_l_bound(n, alpha.denominator))
    except ValueError as exc:
        raise InputError(str(exc))
    best = [r.value for r in reports if r.applicable]
    return {
        "bounds": [_report(r) for r in reports],
        "best": exact(min(best)) if best else None,
        "best_floor": min(r.floor_value for r in reports if r.applicable) if best else None,
    }


TABLE_FIELDS = ("k", "n_k", "alpha_k", "bound", "tight_cardinality", "verdict",
                "lemmens_seidel_witness")


def table_rows(k_min: int, k_max: int) -> list:
    rows = []
    for k in range(k_min, k_max + 1):
        d = bounds.corollary_bound(k).to_dict()
        rows.append({f: d[f] for f in TABLE_FIELDS})
    return rows


def cmd_table(args):
    if not 2 <= args.k_min <= args.k_max:
        raise InputError(f"need 2 <= k-min <= k-max, got {args.k_min}..{args.k_max}")
    return {"rows": table_rows(args.k_min, args.k_max)}


def render_table(rows, fmt) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    widths = {f: max(len(f), *(len(str(r[f])) for r in rows)) for f in TABLE_FIELDS}
    lines = ["  ".join(f.rjust(widths[f]) for f in TABLE_FIELDS)]
    for r in rows:
        lines.append("  ".join(str(r[f]).rjust(widths[f]) for f in TABLE_FIELDS))
    return "\n".join(lines) + "\n"


def cmd_lp(args) -> dict:
    try:
        if args.minimal:
            if args.beta is not None and args.beta != -args.alpha:
                raise InputError("--minimal fixes beta = -alpha")
            inst = minimal_instance(args.n, args.alpha)
        else:
            inst = build_instance(args.n, args.alpha, args.beta, args.lmax_p, args.lmax_s,
                                  args.imax_s)
    except ValueError as exc:
        raise InputError(str(exc))
    if args.tol <= 0:
        raise InputError("--tol must be positive")
    tb = triangle_bound(inst, args.tol, max_pivots=args.max_pivots)
    out = {
        "instance": {k: v for k, v in inst.to_dict().items() if k != "constraints"},
        "constraint_tags": [c.tag for c in inst.constraints],
        "triangle_bound": tb.to_dict(),
        "lower": exact(tb.lower),
        "upper": exact(tb.upper),
    }
    if args.minimal:
        out["proof_replay"] = verify_proposition_33(args.n, args.alpha).to_dict()
    return out


def cmd_check(args) -> dict:
    try:
        config = load_configuration(args.file, args.tolerance)
    except OSError as exc:
        raise InputError(f"{args.file}: {exc.strerror}")
    except ConfigurationError as exc:
        raise InputError(f"{args.file}: {exc}")
    try:
        design = harmonic_index_design_test(config, args.t)
        tight = tightness_check(config)
    except ValueError as exc:
        raise InputError(str(exc))
    return {
        "dimension": config.dimension,
        "size": config.size,
        "profile": profile(config).to_dict(),
        "design_test": design.to_dict(),
        "tightness": tight.to_dict(),
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqlines",
        description="Certified upper bounds for equiangular lines and harmonic index 4 designs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="closed-form bounds on M_alpha(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_rational_arg, required=True, help="'p/q' or decimal")
    p.add_argument("--method", choices=("all", "gerzon", "ls", "okuda-yu"), default="all")

    p = sub.add_parser("table", help="tight-design nonexistence table over k")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("lp", help="certified triangle-LP bound by exact bisection")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_rational_arg, required=True)
    p.add_argument("--beta", type=_rational_arg, default=None, help="default: -alpha")
    p.add_argument("--lmax-p", type=int, default=DEFAULT_L_MAX_P)
    p.add_argument("--lmax-s", type=int, default=DEFAULT_L_MAX_S)
    p.add_argument("--imax-s", type=int, default=DEFAULT_I_MAX_S)
    p.add_argument("--tol", type=_rational_arg, default=DEFAULT_TOL)
    p.add_argument("--minimal", action="store_true",
                   help="only x >= 0, det W >= 0 and the (l=3, i=1) row; replays the proof")
    p.add_argument("--max-pivots", type=int, default=DEFAULT_MAX_PIVOTS)

    p = sub.add_parser("check", help="profile and design tests for a configuration file")
    p.add_argument("--file", required=True)
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    return parser


COMMANDS = {"bound": cmd_bound, "table": cmd_table, "lp": cmd_lp, "check": cmd_check}


def _params(args) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k == "command":
            continue
        out[k] = str(v) if isinstance(v, Fraction) else v
    return out


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        results = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"eqlines {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PivotLimitExceeded as exc:
        print(f"eqlines {args.command}: inconclusive: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    elapsed = time.perf_counter() - start

    if args.command == "table" and args.format != "json":
        stdout.write(render_table(results["rows"], args.format))
        return EXIT_OK
    envelope = {
        "command": args.command,
        "parameters": _params(args),
        "results": results,
        "timing": {"seconds": round(elapsed, 6)},
    }
    json.dump(envelope, stdout, indent=2)
    stdout.write("\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
