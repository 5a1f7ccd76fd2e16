"""Command-line front end: expand, verify, scan, sha (Tunnell table), classnum, r3.

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import verify
from .exprdsl import EvalError, LexError, ParseError, evaluate_text
from .forms import FormName, named_form
from .ntheory import NotFundamental, class_number, r3
from .verify import render_reports


class UsageError(ValueError):
    pass


# registry name -> callable(prec, bound) -> CheckReport
# Each entry derives any extra precision it needs from its own bound.
_CHECKS = {
    "kronecker": lambda prec, bound: verify.check_kronecker_relation(bound),
    "gauss": lambda prec, bound: verify.check_gauss_dictionary(max(bound, 4)),
    "jacobi": lambda prec, bound: verify.check_jacobi_identities(prec),
    "theta4eis": lambda prec, bound: verify.check_theta4_eisenstein(prec),
    "thetaeta": lambda prec, bound: verify.check_theta_eta(prec),
    "example1": lambda prec, bound: verify.check_example1(
        max(prec, 2 * min(bound, 200)), min(bound, 200)
    ),
    "example2": lambda prec, bound: verify.check_example2(prec),
    "congruence18": lambda prec, bound: verify.check_congruence18(max(prec, bound + 12), bound),
    "example3": lambda prec, bound: verify.check_example3(
        max(prec, 2 * min(bound, 100) + 2), min(bound, 100)
    ),
    "classrelation": lambda prec, bound: verify.check_class_relation(max(prec, bound + 1), bound),
    "fourcore": lambda prec, bound: verify.check_fourcore(max(prec, 246), 30),
}


def verify_registry() -> list[str]:
    return list(_CHECKS)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qmod", description=__doc__)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("expand", help="expand a DSL expression or a named form")
    p.add_argument("--expr", help="DSL expression to expand")
    p.add_argument("--form", help="catalog form name (alternative to --expr)")
    _common(p)

    p = sub.add_parser("verify", help="run named checks (or 'all')")
    p.add_argument("checks", nargs="+", help="check names from the registry, or 'all'")
    _common(p)

    p = sub.add_parser("scan", help="square-free indivisibility scan of a form")
    p.add_argument("--form", required=True)
    p.add_argument("--ell", type=int, required=True)
    _common(p)

    p = sub.add_parser("sha", help="conjectural-sha (Tunnell) table for E(N) / E(2N)")
    p.add_argument("--i", type=int, choices=(1, 2), default=1)
    _common(p)

    p = sub.add_parser("classnum", help="class number h(D) for fundamental D < 0")
    p.add_argument("D", type=int)
    _common(p)

    p = sub.add_parser("r3", help="representations of n as a sum of three squares")
    p.add_argument("n", type=int)
    _common(p)

    return ap


def _common(p: argparse.ArgumentParser):
    p.add_argument("--prec", type=int, default=256)
    p.add_argument("--bound", type=int, default=500)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write output to a file instead of stdout")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_expand(args) -> int:
    if bool(args.expr) == bool(args.form):
        raise UsageError("expand needs exactly one of --expr or --form")
    if args.prec < 1:
        raise UsageError("--prec must be positive")
    if args.form:
        try:
            name = FormName(args.form)
        except ValueError:
            raise UsageError(f"unknown form {args.form!r}") from None
        series = named_form(name, args.prec)
    else:
        series = evaluate_text(args.expr, args.prec)
    _emit(args, json.dumps(series.to_json()) if args.json else str(series))
    return 0


def _cmd_verify(args) -> int:
    names = list(args.checks)
    if names == ["all"]:
        names = verify_registry()
    unknown = [n for n in names if n not in _CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s): {', '.join(unknown)}")
    if args.bound < 1:
        raise UsageError("--bound must be positive")
    if args.prec < 8:
        raise UsageError("--prec must be at least 8")
    reports = [_CHECKS[n](args.prec, args.bound) for n in names]
    if args.json:
        _emit(args, json.dumps([r.to_json() for r in reports]))
    else:
        _emit(args, render_reports(reports))
        for r in reports:
            for ce in r.counterexamples:
                print(f"  {r.name}: input={ce['input']} expected={ce['expected']} actual={ce['actual']}")
    return 0 if all(r.status == "pass" for r in reports) else 1


def _cmd_scan(args) -> int:
    try:
        name = FormName(args.form)
    except ValueError:
        raise UsageError(f"unknown form {args.form!r}") from None
    if args.bound < 1:
        raise UsageError("--bound must be positive")
    report = verify.scan_indivisibility(name, args.ell, args.bound)
    if args.json:
        _emit(args, json.dumps(report.to_json()))
    else:
        _emit(
            args,
            f"form {report.form}, ell={report.ell}, X={report.bound}: "
            f"{len(report.hits)}/{report.squarefree_checked} square-free hits\n"
            f"first hits: {report.hits[:20]}",
        )
    return 0


def _cmd_sha(args) -> int:
    if args.bound < 1:
        raise UsageError("--bound must be positive")
    rows = verify.tunnell_table(args.i, args.bound)
    if args.json:
        _emit(args, json.dumps([r.to_json() for r in rows]))
    else:
        lines = [f"{'N':>6} {'a':>8} {'nu':>3} {'S (conjectural order)':>22}"]
        for r in rows:
            s = "zero-coefficient" if r.S is None else str(r.S)
            lines.append(f"{r.N:>6} {r.a:>8} {r.nu:>3} {s:>22}")
        _emit(args, "\n".join(lines))
    return 0


def _cmd_classnum(args) -> int:
    try:
        h = class_number(args.D)
    except NotFundamental as exc:
        raise UsageError(str(exc)) from None
    _emit(args, json.dumps({"D": args.D, "h": h}) if args.json else str(h))
    return 0


def _cmd_r3(args) -> int:
    if args.n < 0:
        raise UsageError("n must be nonnegative")
    v = r3(args.n)
    _emit(args, json.dumps({"n": args.n, "r3": v}) if args.json else str(v))
    return 0


_DISPATCH = {
    "expand": _cmd_expand,
    "verify": _cmd_verify,
    "scan": _cmd_scan,
    "sha": _cmd_sha,
    "classnum": _cmd_classnum,
    "r3": _cmd_r3,
}


def run(argv: list[str]) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return _DISPATCH[args.subcommand](args)
    except (UsageError, LexError, ParseError, EvalError, ValueError) as exc:
        print(f"qmod: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
