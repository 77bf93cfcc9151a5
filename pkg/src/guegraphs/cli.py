"""Command-line interface.

    guegraphs correlator 4
    guegraphs enumerate rg 4
    guegraphs asymptotics og --fixed 2 --fit 1..5 --holdout 6..10
    guegraphs verify 8 --jobs 4

Rationals are printed as exact ``"p/q"`` strings in both JSON and CSV.
Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 oracle resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import wick
from .asymptotics import FAMILIES, fit_and_verify, smallest_admissible_g
from .errors import DomainError, ResourceLimitError
from .exact import format_fraction
from .expansion import (correlator_polynomial, genus_og, genus_rg, normalized_og,
                        normalized_rg, og_count, rg_count, validate_profile)
from .verify import verify_up_to

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def parse_range(text: str) -> range:
    """``"a..b"`` (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"valencies must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    common.add_argument("--oracle-cap", type=int, default=None,
                        help="largest total valency the Wick oracle will enumerate "
                             "(default: $GUEGRAPHS_ORACLE_CAP or 16)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--degree-cap", type=int, default=8,
                        help="largest numerator/denominator degree tried in reconstruction")

    parser = argparse.ArgumentParser(prog="guegraphs", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("correlator", parents=[common],
                       help="connected correlator <tr M^i1 ... tr M^in>_c as a polynomial in N")
    p.add_argument("profile", nargs="+", type=_positive)

    p = sub.add_parser("enumerate", parents=[common],
                       help="ordinary (og) or one-face ribbon (rg) graph count")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("profile", nargs="+", type=_positive)

    p = sub.add_parser("asymptotics", parents=[common],
                       help="fit the normalized count as a rational function of g")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--fixed", nargs="*", type=_positive, default=[])
    p.add_argument("--fit", type=parse_range, default=None,
                   help="genus range a..b (default: the 15 smallest admissible genera)")
    p.add_argument("--holdout", type=parse_range, default=None,
                   help="genus range a..b (default: the 5 genera after the fit range)")
    p.add_argument("--order", type=int, default=6, help="number of 1/g coefficients")

    p = sub.add_parser("verify", parents=[common],
                       help="compare the formula path with the Wick oracle for all profiles")
    p.add_argument("max_total", type=int)
    return parser


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _cmd_correlator(args) -> tuple[int, str]:
    poly = correlator_polynomial(validate_profile(args.profile))
    coeffs = poly.to_strings()
    if args.format == "csv":
        return EXIT_OK, _csv([("power", "coefficient")] + list(enumerate(coeffs)))
    return EXIT_OK, _json({"poly_N": coeffs})


def _cmd_enumerate(args) -> tuple[int, str]:
    profile = validate_profile(args.profile)
    if args.family == "og":
        g = genus_og(profile)
        count, norm = og_count(profile, g), normalized_og(profile, g)
    else:
        g = genus_rg(profile)
        count, norm = rg_count(profile, g), normalized_rg(profile, g)
    row = {"genus": g, "count": format_fraction(count), "normalized": format_fraction(norm)}
    if args.format == "csv":
        return EXIT_OK, _csv([("genus", "count", "normalized"),
                              (row["genus"], row["count"], row["normalized"])])
    return EXIT_OK, _json(row)


def _cmd_asymptotics(args) -> tuple[int, str]:
    fixed = tuple(args.fixed)
    fit = args.fit
    if fit is None:
        g0 = smallest_admissible_g(args.family, fixed)
        fit = range(g0, g0 + 15)
    holdout = args.holdout
    if holdout is None:
        holdout = range(fit.stop, fit.stop + 5)
    report = fit_and_verify(args.family, fixed, fit, holdout, degree_cap=args.degree_cap,
                            expansion_order=args.order, jobs=args.jobs)
    code = EXIT_OK if report.ok else EXIT_FAIL
    if args.format == "csv":
        d = report.to_dict()
        rows = [("kind", "index", "value")]
        rows += [("sample", g, v) for g, v in d["samples"]]
        if d["fitted"]:
            rows += [("num", k, c) for k, c in enumerate(d["fitted"]["num"])]
            rows += [("den", k, c) for k, c in enumerate(d["fitted"]["den"])]
        rows += [("expansion", k, c) for k, c in enumerate(d["expansion"])]
        rows += [("limit_verified", "", d["limit_verified"]),
                 ("holdout_exact", "", d["holdout_exact"])]
        return code, _csv(rows)
    return code, _json(report.to_dict())


def _cmd_verify(args) -> tuple[int, str]:
    cap = args.oracle_cap if args.oracle_cap is not None else wick.DEFAULT_CAP
    if args.max_total > cap:
        raise ResourceLimitError(f"max total {args.max_total} exceeds oracle cap {cap}")
    results = verify_up_to(args.max_total, cap, jobs=args.jobs)
    failed = [r for r in results if not r.passed]
    code = EXIT_OK if not failed else EXIT_FAIL
    if args.format == "csv":
        rows = [("profile", "status", "failed_checks")]
        rows += [(" ".join(map(str, r.profile)), "pass" if r.passed else "fail",
                  " ".join(k for k, v in r.checks.items() if not v)) for r in results]
        return code, _csv(rows)
    doc = {
        "checked": len(results),
        "failed": [list(r.profile) for r in failed],
        "profiles": [{"profile": list(r.profile), "status": "pass" if r.passed else "fail",
                      "checks": r.checks} for r in results],
    }
    return code, _json(doc)


COMMANDS = {
    "correlator": _cmd_correlator,
    "enumerate": _cmd_enumerate,
    "asymptotics": _cmd_asymptotics,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.oracle_cap is not None:
        os.environ["GUEGRAPHS_ORACLE_CAP"] = str(args.oracle_cap)
    try:
        code, text = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
