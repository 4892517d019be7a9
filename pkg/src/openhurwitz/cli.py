"""Batch command-line front end.

Subcommands:

    closed        table of closed Hurwitz numbers, with the brute-force
                  symmetric-group oracle as a cross-check column
    open          per-level tables of open Hurwitz numbers, with the
                  single-row closed form N/k as a cross-check column
    verify        run named verification suites, emit a JSON/CSV report
    soliton-demo  build rational soliton tau-functions and check their
                  Backlund-Darboux chain

Exit codes: 0 success, 1 verification/cross-check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from math import factorial

from .hurwitz import (closed_hurwitz_oracle, closed_tau, closed_tau_q1q2,
                      open_tau)
from .kp import SolitonParams, fay_holds_graded, soliton_chain_holds, soliton_tau
from .series import default_profile
from .symfun import partitions_of
from .verify import SUITES, run_suites, suite_passes

ORACLE_D_MAX = 5
ORACLE_M_MAX = 6


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="openhurwitz",
        description="Exact verification engine for Hurwitz tau-functions "
                    "and their Backlund-Darboux structure.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--weight", type=int, default=4,
                        help="max total power-sum weight (default 4)")
        sp.add_argument("--beta-order", type=int, default=3,
                        help="joint truncation order in the branch parameters")
        sp.add_argument("--q1-max", type=int, default=4,
                        help="max exponent of the boundary grading q1")
        sp.add_argument("--window", type=int, default=7,
                        help="half-width of the Laurent x-window")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized spot checks")

    sp = sub.add_parser("closed", help="closed Hurwitz number table")
    common(sp)
    sp.add_argument("--no-oracle", action="store_true",
                    help="skip the permutation-counting cross check")

    sp = sub.add_parser("open", help="open Hurwitz number tables")
    common(sp)
    sp.add_argument("--n-range", default="-2..2",
                    help="levels N, as 'a..b' or a comma list")

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suite", default="all",
                    choices=tuple(sorted(SUITES)) + ("all",))
    sp.add_argument("--n-range", default="-1..2")
    sp.add_argument("--alphas", default=None, help="soliton alpha_i, comma list")
    sp.add_argument("--betas", default=None, help="soliton beta_i, comma list")
    sp.add_argument("--gains", default=None, help="soliton a_i, comma list")

    sp = sub.add_parser("soliton-demo", help="soliton Wronskian demonstration")
    common(sp)
    sp.add_argument("--alphas", default="1,2,3")
    sp.add_argument("--betas", default="-1,-2,-3")
    sp.add_argument("--gains", default="1,2,3")
    return p


def parse_n_range(text: str):
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError("empty N range")
        return list(range(lo, hi + 1))
    return [int(x) for x in text.split(",")]


def parse_rationals(text: str):
    return [Fraction(x) for x in text.split(",")]


def profile_from(args):
    return default_profile(weight=args.weight, beta_order=args.beta_order,
                           q1_max=args.q1_max, window=args.window)


def emit(args, payload, csv_rows=None, csv_fields=None) -> None:
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=csv_fields, lineterminator="\n")
        writer.writeheader()
        for row in csv_rows:
            writer.writerow(row)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def lam_str(lam) -> str:
    return "-".join(str(p) for p in lam) if lam else ""


def cmd_closed(args) -> int:
    profile = profile_from(args)
    tau = closed_tau(profile)
    h = tau.log()
    rows = []
    mismatch = False
    for d in range(1, profile.max_p_weight + 1):
        if d > profile.max_q1:
            break
        for lam in partitions_of(d):
            for m in range(profile.beta_order + 1):
                val = h.coeff(lam, d, 0).coeff(m, 0) * factorial(m)
                row = {"lambda": lam_str(lam), "m": m,
                       "value_num": str(val.numerator),
                       "value_den": str(val.denominator)}
                if not args.no_oracle and d <= ORACLE_D_MAX and m <= ORACLE_M_MAX:
                    ov = closed_hurwitz_oracle(lam, m)
                    row["oracle_num"] = str(ov.numerator)
                    row["oracle_den"] = str(ov.denominator)
                    row["match"] = str(ov == val).lower()
                    if ov != val:
                        mismatch = True
                rows.append(row)
    fields = ["lambda", "m", "value_num", "value_den"]
    if not args.no_oracle:
        fields += ["oracle_num", "oracle_den", "match"]
    emit(args, {"table": rows, "profile": profile.to_json_obj()},
         csv_rows=rows, csv_fields=fields)
    return 1 if mismatch else 0


def cmd_open(args) -> int:
    profile = profile_from(args)
    levels = parse_n_range(args.n_range)
    tau_c = closed_tau(profile)
    h_closed = closed_tau_q1q2(profile, beta_sum=True, tau=tau_c).log()
    rows = []
    mismatch = False
    for n in levels:
        h_open = open_tau(n, profile, tau_c=tau_c).log() - h_closed
        for (lam, e1, e2), b in sorted(h_open.terms.items()):
            if e2 != sum(lam):
                mismatch = True  # grading violation: q2 must track weight
            for (m1, m2), v in sorted(b.c.items()):
                val = v * factorial(m1) * factorial(m2)
                row = {"lambda": lam_str(lam), "m1": m1, "m2": m2,
                       "d1": e1, "N": n,
                       "value_num": str(val.numerator),
                       "value_den": str(val.denominator)}
                if len(lam) == 1 and (m1, m2, e1) == (0, 0, 0):
                    expect = Fraction(n, lam[0])
                    row["single_row_num"] = str(expect.numerator)
                    row["single_row_den"] = str(expect.denominator)
                    if val != expect:
                        mismatch = True
                rows.append(row)
    fields = ["lambda", "m1", "m2", "d1", "N", "value_num", "value_den",
              "single_row_num", "single_row_den"]
    emit(args, {"table": rows, "profile": profile.to_json_obj()},
         csv_rows=rows, csv_fields=fields)
    return 1 if mismatch else 0


def cmd_verify(args) -> int:
    profile = profile_from(args)
    kwargs = {"seed": args.seed, "n_range": None}
    levels = parse_n_range(args.n_range)
    kwargs["n_range"] = (min(levels), max(levels))
    if args.alphas or args.betas or args.gains:
        if not (args.alphas and args.betas and args.gains):
            raise ValueError("soliton parameters require --alphas, --betas "
                             "and --gains together")
        kwargs["params"] = SolitonParams(parse_rationals(args.alphas),
                                         parse_rationals(args.betas),
                                         parse_rationals(args.gains))
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, profile, **kwargs)
    ok = suite_passes(reports)
    rows = [{"check": r["check"], "status": r["status"],
             "witness": json.dumps(r.get("witness"), sort_keys=True)}
            for r in reports]
    emit(args, {"reports": reports, "status": "pass" if ok else "fail"},
         csv_rows=rows, csv_fields=["check", "status", "witness"])
    return 0 if ok else 1


def cmd_soliton_demo(args) -> int:
    profile = profile_from(args)
    params = SolitonParams(parse_rationals(args.alphas),
                           parse_rationals(args.betas),
                           parse_rationals(args.gains))
    rows = []
    ok = True
    for k in range(1, params.n + 1):
        tau = soliton_tau(params, k, profile)
        fay_ok = fay_holds_graded(tau)
        chain_ok = soliton_chain_holds(params, k, profile)
        ok = ok and fay_ok and chain_ok
        const = tau.s.constant_term().rational_part()
        rows.append({"k": k,
                     "constant_num": str(const.numerator),
                     "constant_den": str(const.denominator),
                     "fay": "pass" if fay_ok else "fail",
                     "chain": "pass" if chain_ok else "fail"})
    emit(args, {"soliton": rows, "profile": profile.to_json_obj(),
                "status": "pass" if ok else "fail"},
         csv_rows=rows,
         csv_fields=["k", "constant_num", "constant_den", "fay", "chain"])
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"closed": cmd_closed, "open": cmd_open,
                "verify": cmd_verify, "soliton-demo": cmd_soliton_demo}
    try:
        return handlers[args.command](args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
