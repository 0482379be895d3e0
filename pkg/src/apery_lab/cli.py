"""Command-line entry point: ``apery-lab {seq,verify,congruence,zetaq,eta}``.

Exit codes: 0 success, 1 a mathematical failure (identity or congruence
FAILS), 2 a usage error.  Rationals are written as "num/den" strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import apery_like, classical_apery, congruence_lab, normalized, series_ops, verify_suites

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Raised for argument combinations argparse cannot validate on its own."""


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _int_set(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(sorted({int(t) for t in text.split(",") if t.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("k values must be positive")
    return vals


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _write(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# --- seq ------------------------------------------------------------------------------


def cmd_seq(args) -> int:
    fam = args.family
    if fam in ("j", "tj") and args.k is None:
        raise UsageError("--k is required for --family j and tj")
    if fam in ("j", "tj") and args.k < 1:
        raise UsageError("--k must be >= 1")
    if fam not in ("j", "tj") and args.k is not None:
        raise UsageError("--k only applies to --family j and tj")
    n_max = args.n_max
    if fam == "j":
        table = apery_like.jk_table(args.k, n_max)
        rows = []
        for n in range(n_max + 1):
            v = table.values[n]
            rows.append((n, None if v is None else v))
        if args.format == "json":
            doc = {
                "family": "j", "k": args.k,
                "values": [
                    {"n": n, "value": None if v is None else v.to_json_obj(),
                     "riemann": None if v is None else v.display()}
                    for n, v in rows
                ],
            }
            return _emit_json(args, doc)
        return _emit_csv(args, ["n", "riemann"], [(n, "_" if v is None else v.display()) for n, v in rows])
    if fam == "tj":
        vals = normalized.tj(args.k, max(n_max, 1)).values[: n_max + 1]
        header = {"family": "tj", "k": args.k}
    else:
        family = classical_apery.ApFamily(fam)
        vals = classical_apery.apery_rec(family, max(n_max, 1))[: n_max + 1]
        header = {"family": fam}
    if args.format == "json":
        header["values"] = [{"n": n, "value": None if v is None else _frac(v)} for n, v in enumerate(vals)]
        return _emit_json(args, header)
    return _emit_csv(args, ["n", "value"], [(n, "_" if v is None else _frac(v)) for n, v in enumerate(vals)])


def _emit_json(args, doc) -> int:
    _write(args, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _emit_csv(args, header, rows) -> int:
    _write(args, _csv_text(header, rows))
    return EXIT_OK


# --- verify ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.k_max < 4 and args.suite in ("recurrence", "all"):
        raise UsageError("--k-max must be >= 4 for the recurrence suite")
    if args.n_max < 2:
        raise UsageError("--n-max must be >= 2")
    if args.order is not None and args.order < 4:
        raise UsageError("--order must be >= 4")
    res = verify_suites.run_suite(args.suite, args.k_max, args.n_max, args.order)
    if args.format == "json":
        doc = {"suite": res.suite, "checked": res.checked, "ok": res.ok,
               "failures": [vars(f) for f in res.failures]}
        _write(args, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [f"suite {res.suite}: {res.checked} identities checked, "
                 f"{len(res.failures)} failing"]
        lines += [f"FAIL {f}" for f in res.failures]
        _write(args, "\n".join(lines) + "\n")
    return EXIT_OK if res.ok else EXIT_MATH


# --- congruence -----------------------------------------------------------------------


def cmd_congruence(args) -> int:
    if args.check.lower() == "all":
        checks = list(congruence_lab.CheckId)
    else:
        try:
            checks = [congruence_lab.CheckId.parse(c) for c in args.check.split(",")]
        except ValueError as exc:
            raise UsageError(f"--check: {exc}") from None
    if args.p_max < 3:
        raise UsageError("--p-max must be >= 3 (odd primes only)")
    reports = congruence_lab.run_checks(
        checks, jobs=args.jobs, p_max=args.p_max, r_max=args.r_max, m_max=args.m_max,
        k_set=args.k_set, n_max=args.n_max, strong_r_max=args.strong_r_max,
    )
    if args.format == "json":
        _write(args, congruence_lab.reports_jsonl(reports))
    else:
        _write(args, congruence_lab.summary_csv(reports))
    summaries = congruence_lab.summarize(reports)
    for s in summaries:
        if s.fails:
            kind = "conjecture counterexample" if s.check.is_conjecture else "FAILS"
            print(f"{s.check.value}: {s.fails} {kind}(s), first at {s.witnesses[0]}", file=sys.stderr)
    return EXIT_MATH if any(s.fails for s in summaries) else EXIT_OK


# --- zetaq ----------------------------------------------------------------------------


def cmd_zetaq(args) -> int:
    try:
        params = apery_like.ZetaQParams(args.alpha, args.beta)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        res = apery_like.zeta_q_detail(args.s, params, args.tol)
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH
    doc = {
        "s": res.s, "alpha": args.alpha, "beta": args.beta,
        "value": repr(res.value), "tolerance": args.tol,
        "error_bound": repr(res.error_bound), "terms": res.terms,
        "g_exact": repr(res.g_exact), "g_closed": repr(res.g_closed),
    }
    if args.format == "json":
        _write(args, json.dumps(doc, indent=2) + "\n")
    else:
        _write(args, _csv_text(list(doc), [list(doc.values())]))
    return EXIT_OK


# --- eta ------------------------------------------------------------------------------


def cmd_eta(args) -> int:
    eta = series_ops.eta_coeffs(args.which, args.n_max, method=args.method)
    coeffs = [eta[n] for n in range(1, args.n_max + 1)]
    if args.format == "json":
        doc = {"which": args.which, "n_max": args.n_max,
               "coefficients": [{"n": n, "value": c} for n, c in enumerate(coeffs, 1)]}
        return _emit_json(args, doc)
    return _emit_csv(args, ["n", "value"], list(enumerate(coeffs, 1)))


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apery-lab",
        description="Exact Apery and Apery-like numbers, identity checks and congruence sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="csv"):
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")

    p = sub.add_parser("seq", help="print a sequence table")
    p.add_argument("--family", required=True, choices=("a2", "b2", "a3", "b3", "j", "tj"))
    p.add_argument("--k", type=int, default=None, help="order k (families j and tj)")
    p.add_argument("--n-max", type=_nonneg_int, required=True)
    common(p)
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("verify", help="run exact identity suites")
    p.add_argument("--suite", choices=("recurrence", "ode", "decomposition", "all"), default="all")
    p.add_argument("--k-max", type=_positive_int, default=8)
    p.add_argument("--n-max", type=_positive_int, default=60)
    p.add_argument("--order", type=_positive_int, default=None,
                   help="series order for the ode suite (default: 200/150/100 per identity)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("congruence", help="run congruence checks")
    p.add_argument("--check", required=True, help="check name, comma list, or 'all'")
    p.add_argument("--p-max", type=_positive_int, default=31)
    p.add_argument("--r-max", type=_positive_int, default=2)
    p.add_argument("--m-max", type=_positive_int, default=3)
    p.add_argument("--k-set", type=_int_set, default=(2, 3), help="e.g. 2,3")
    p.add_argument("--n-max", type=_positive_int, default=2000, help="index bound for p-ary checks")
    p.add_argument("--strong-r-max", type=_nonneg_int, default=None,
                   help="r bound for the strengthened moduli (default: --r-max)")
    p.add_argument("--jobs", type=_positive_int, default=None,
                   help="worker processes (default: $APERY_LAB_JOBS or 1)")
    common(p, default_format="json")
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("zetaq", help="evaluate zeta_Q(2) or zeta_Q(3)")
    p.add_argument("--s", type=int, choices=(2, 3), required=True)
    p.add_argument("--alpha", type=_positive_float, required=True)
    p.add_argument("--beta", type=_positive_float, required=True)
    p.add_argument("--tol", type=_positive_float, default=1e-10)
    common(p, default_format="json")
    p.set_defaults(func=cmd_zetaq)

    p = sub.add_parser("eta", help="eta-product coefficients lambda_n or gamma_n")
    p.add_argument("--which", choices=("lambda", "gamma"), required=True)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--method", choices=("pentagonal", "naive"), default="pentagonal")
    common(p)
    p.set_defaults(func=cmd_eta)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
