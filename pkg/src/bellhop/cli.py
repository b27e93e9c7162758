"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import boson, combinatorics, egf, hopf, partition_function as pf
from .errors import ExpressionParseError, QuadratureError, ResourceLimitError

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _fmt_float(x: float) -> str:
    return repr(float(x))  # shortest round-trip decimal


def _emit(args, rows: list[dict], columns: list[str]):
    """Write rows in the selected format to --out or stdout."""
    buf = io.StringIO()
    if args.format == "json":
        json.dump(rows, buf, indent=None, separators=(",", ":"))
        buf.write("\n")
    elif args.format == "csv":
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c) for c in columns}
        buf.write("  ".join(c.ljust(widths[c]) for c in columns).rstrip() + "\n")
        for r in rows:
            buf.write("  ".join(str(r[c]).ljust(widths[c]) for c in columns).rstrip() + "\n")
    text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_rational_list(values: list[str]) -> list[Fraction]:
    return [Fraction(v) for v in values]


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_bell(args) -> int:
    nmax = args.nmax
    if nmax < 0:
        raise ResourceLimitError("nmax must be nonnegative")
    rows = []
    for n in range(nmax + 1):
        row = {"n": n, "bell": combinatorics.bell(n)}
        if args.triangle:
            row["stirling"] = " ".join(
                str(combinatorics.stirling2(n, k)) for k in range(n + 1)
            )
        rows.append(row)
    cols = ["n", "bell"] + (["stirling"] if args.triangle else [])
    _emit(args, rows, cols)
    return EXIT_OK


def cmd_stirling(args) -> int:
    _emit(args, [{"n": args.n, "k": args.k, "stirling2": combinatorics.stirling2(args.n, args.k)}],
          ["n", "k", "stirling2"])
    return EXIT_OK


def cmd_normal_order(args) -> int:
    expr = boson.parse_expression(args.expression)
    form = boson.normal_order(expr)
    sys.stdout.write(boson.format_normal_form(form) + "\n")
    return EXIT_OK


def cmd_dobinski(args) -> int:
    res = combinatorics.dobinski_bell_poly(args.n, Fraction(args.y), args.k_max, args.precision) \
        if args.y != "1" else combinatorics.dobinski_bell(args.n, args.k_max, args.precision)
    rows = [{
        "n": args.n,
        "y": args.y,
        "terms": res.terms_used,
        "value": str(res.value),
        "tail_bound": str(res.tail_bound),
    }]
    _emit(args, rows, ["n", "y", "terms", "value", "tail_bound"])
    return EXIT_OK


def cmd_egf(args) -> int:
    if args.action == "bell":
        series = egf.bell_egf(args.order)
    else:
        coeffs = _parse_rational_list(args.coefficients)
        series = egf.EGFSeries(tuple(coeffs))
        series = egf.egf_exp(series) if args.action == "exp" else egf.egf_log(series)
    out = series.to_json() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_wv(args) -> int:
    values = _parse_rational_list(args.values)
    if args.direction == "w-to-v":
        out = egf.w_to_v(values)
    else:
        out = egf.v_to_w(values)
    sys.stdout.write(" ".join(str(v) for v in out) + "\n")
    return EXIT_OK


def cmd_diagrams(args) -> int:
    census = combinatorics.diagram_census(args.n)
    keyed = sorted(census.counts.items(), key=lambda kv: (kv[0].degree, kv[0].letters))
    rows = [{"monomial": str(m), "multiplicity": c} for m, c in keyed]
    _emit(args, rows, ["monomial", "multiplicity"])
    return EXIT_OK


def cmd_partition_function(args) -> int:
    rows = []
    if args.divergence is not None:
        grid = [10.0, 100.0, 1000.0, 10000.0]
        for be in args.beta_eps:
            p = pf.ModelParams(1.0, be)
            report = pf.divergence_report(args.divergence, p, grid)
            for M, v in zip(report.cutoffs, report.values):
                rows.append({
                    "beta_epsilon": _fmt_float(be),
                    "method": f"termwise(n={args.divergence})",
                    "M": _fmt_float(M),
                    "N": args.divergence,
                    "value": _fmt_float(v),
                    "abs_error_vs_closed_form": _fmt_float(abs(v - pf.closed_form_Z(p))),
                })
    else:
        for be in args.beta_eps:
            p = pf.ModelParams(1.0, be)
            closed = pf.closed_form_Z(p)
            rows.append({
                "beta_epsilon": _fmt_float(be), "method": "closed_form",
                "M": "", "N": "",
                "value": _fmt_float(closed), "abs_error_vs_closed_form": _fmt_float(0.0),
            })
            q = pf.QuadratureConfig(cutoff=args.cutoff, method=args.method)
            value, _ = pf.regularized_Z(p, q)
            rows.append({
                "beta_epsilon": _fmt_float(be), "method": f"regularized_{args.method}",
                "M": _fmt_float(args.cutoff), "N": "",
                "value": _fmt_float(value),
                "abs_error_vs_closed_form": _fmt_float(abs(value - closed)),
            })
            series = pf.regularized_series_Z(p, args.cutoff, args.order)
            rows.append({
                "beta_epsilon": _fmt_float(be), "method": "regularized_series",
                "M": _fmt_float(args.cutoff), "N": args.order,
                "value": _fmt_float(series),
                "abs_error_vs_closed_form": _fmt_float(abs(series - closed)),
            })
            if args.combinatorial:
                value = pf.combinatorial_Z(p, args.cutoff, args.order)
                rows.append({
                    "beta_epsilon": _fmt_float(be), "method": "combinatorial",
                    "M": _fmt_float(args.cutoff), "N": args.order,
                    "value": _fmt_float(value),
                    "abs_error_vs_closed_form": _fmt_float(abs(value - closed)),
                })
    _emit(args, rows, ["beta_epsilon", "method", "M", "N", "value", "abs_error_vs_closed_form"])
    return EXIT_OK


def cmd_hopf_verify(args) -> int:
    antipode_fn = hopf.antipode
    if args.corrupt_antipode:
        # deliberate fault: drop the sign, so the convolution identity fails
        antipode_fn = lambda a: hopf.HopfElement(dict(a.terms))
    reports = hopf.run_all_checks(args.max_weight, antipode_fn)
    for rep in reports:
        sys.stdout.write(str(rep) + "\n")
    if all(r.ok for r in reports):
        sys.stdout.write("all axioms pass\n")
        return EXIT_OK
    return EXIT_VERIFY


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellhop",
        description="Bell-number combinatorics, boson normal ordering, and the BELL Hopf algebra",
    )
    parser.add_argument("--format", choices=["json", "csv", "plain"], default="plain")
    parser.add_argument("--out", default=None, help="write output to PATH instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bell", help="Bell numbers B(0..nmax), optionally the Stirling triangle")
    p.add_argument("nmax", type=int)
    p.add_argument("--triangle", action="store_true")
    p.set_defaults(func=cmd_bell)

    p = sub.add_parser("stirling", help="one Stirling number of the second kind")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_stirling)

    p = sub.add_parser("normal-order", help="normal-order a boson expression")
    p.add_argument("expression")
    p.set_defaults(func=cmd_normal_order)

    p = sub.add_parser("dobinski", help="truncated Dobinski evaluation with tail bound")
    p.add_argument("n", type=int)
    p.add_argument("--y", default="1", help="Bell-polynomial argument (rational, default 1)")
    p.add_argument("--k-max", type=int, default=60)
    p.add_argument("--precision", type=int, default=50)
    p.set_defaults(func=cmd_dobinski)

    p = sub.add_parser("egf", help="EGF operations with exact rational coefficients")
    p.add_argument("action", choices=["exp", "log", "bell"])
    p.add_argument("--order", type=int, default=8)
    p.add_argument("coefficients", nargs="*", help="a_0 a_1 ... as rationals (exp/log)")
    p.set_defaults(func=cmd_egf)

    p = sub.add_parser("wv", help="moment <-> connected-moment transforms")
    p.add_argument("direction", choices=["w-to-v", "v-to-w"])
    p.add_argument("values", nargs="+", help="W_0.. or V_1.. as rationals")
    p.set_defaults(func=cmd_wv)

    p = sub.add_parser("diagrams", help="set-partition census by block-size monomial")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_diagrams)

    p = sub.add_parser("partition-function", help="compare partition-function routes")
    p.add_argument("--beta-eps", type=float, nargs="+", required=True)
    p.add_argument("--cutoff", type=float, default=20.0, help="regulator M")
    p.add_argument("--order", type=int, default=200, help="series order N")
    p.add_argument("--method", choices=["analytic", "gauss"], default="analytic")
    p.add_argument("--combinatorial", action="store_true",
                   help="include the truncated Bell-polynomial route")
    p.add_argument("--divergence", type=int, default=None, metavar="N",
                   help="emit the term-N divergence demonstration instead")
    p.set_defaults(func=cmd_partition_function)

    p = sub.add_parser("hopf-verify", help="machine-check the Hopf axioms")
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--corrupt-antipode", action="store_true",
                   help="debug fault injection: verify the checker catches a broken antipode")
    p.set_defaults(func=cmd_hopf_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ExpressionParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE
    except (ValueError, QuadratureError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
