"""Command-line front end.

Every subcommand prints one JSON report to stdout (``--json`` says so
explicitly).  ``--csv PATH`` additionally writes the same report as CSV
to PATH; a bare ``--csv`` (or ``--csv -``) replaces the stdout JSON with
the CSV text instead.  Exit codes are part of the contract:

    0  success
    2  domain error (inputs outside a function's domain)
    3  capacity error (request exceeds configured resource budgets)
    4  configuration error (inconsistent parameters)
    5  invariant violation (internal self-check failed; a bug or a
       genuine mathematical event — never expected)
    6  any other unexpected failure

The environment variable ``ES_SELFTEST_RAISE`` (values ``domain``,
``capacity``, ``configuration``, ``invariant``) makes the dispatcher
raise the corresponding error before doing any work; the test suite uses
it to pin the exit-code table without manufacturing real failures.
``ES_CACHE_DIR`` relocates the result cache.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from . import __version__, arith, bilinear, congruence, meanvalue, solutions
from .errors import (CapacityError, ConfigurationError, DomainError,
                     EsmeanError, InvariantViolation)
from .reports import (REPORT_SCHEMA_VERSION, SumReport, kv_rows_to_csv,
                      table_to_csv, to_json)

_EXIT_CODES = {
    DomainError: 2,
    CapacityError: 3,
    ConfigurationError: 4,
    InvariantViolation: 5,
}


def _emit(args: argparse.Namespace, json_text: str, csv_text: str) -> None:
    if getattr(args, "json", False) and args.csv == "-":
        raise ConfigurationError(
            "--json and a bare --csv both claim stdout; pick one "
            "(or give --csv a PATH)")
    if args.csv is None:
        sys.stdout.write(json_text)
    elif args.csv == "-":
        sys.stdout.write(csv_text)
    else:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        sys.stdout.write(json_text)


def _cmd_solve(args: argparse.Namespace) -> None:
    ss = solutions.enumerate_solutions(args.n)
    payload = {
        "kind": "solution_set",
        "schema_version": REPORT_SCHEMA_VERSION,
        "n": ss.n,
        "canonical": [[t.n1, t.n2, t.n3] for t in ss.canonical],
        "ordered_count": ss.ordered_count,
    }
    csv_text = kv_rows_to_csv([("n", ss.n),
                               ("ordered_count", ss.ordered_count)])
    csv_text += table_to_csv(["n1", "n2", "n3", "permutations"],
                             [[t.n1, t.n2, t.n3, t.permutation_weight()]
                              for t in ss.canonical])
    _emit(args, to_json(payload), csv_text)


def _cmd_split(args: argparse.Namespace) -> None:
    ts = solutions.type_split(args.p)
    payload = {
        "kind": "type_split",
        "schema_version": REPORT_SCHEMA_VERSION,
        "p": ts.p, "f1": ts.f1, "f2": ts.f2, "other": ts.other,
        "total": ts.total,
    }
    csv_text = kv_rows_to_csv([("p", ts.p), ("f1", ts.f1), ("f2", ts.f2),
                               ("other", ts.other), ("total", ts.total)])
    _emit(args, to_json(payload), csv_text)


def _cmd_mean(args: argparse.Namespace) -> None:
    rep = meanvalue.mean_value_report(args.x, workers=args.workers)
    _emit(args, rep.to_json(), rep.to_csv())


def _cmd_weightsum(args: argparse.Namespace) -> None:
    rep = meanvalue.reduction_weight_sum(args.x)
    _emit(args, rep.to_json(), rep.to_csv())


def _cmd_chain(args: argparse.Namespace) -> None:
    rep = meanvalue.final_chain(args.x)
    _emit(args, rep.to_json(), rep.to_csv())


def _cmd_bilinear(args: argparse.Namespace) -> None:
    box = bilinear.BoxSpec(V=args.v, W=args.w, theta=args.theta)
    if args.cases:
        rep = bilinear.case_contributions(box, workers=args.workers)
    else:
        rep = bilinear.bilinear_divisor_sum(box, workers=args.workers)
    _emit(args, rep.to_json(), rep.to_csv())


def _cmd_lemma(args: argparse.Namespace) -> None:
    rep = bilinear.smooth_d2_over_n_sum(args.z, args.r, n_max=args.n_max)
    _emit(args, rep.to_json(), rep.to_csv())


def _cmd_congruence(args: argparse.Namespace) -> None:
    count = congruence.quad_root_count(args.l, args.n)
    payload = {
        "kind": "congruence_count",
        "schema_version": REPORT_SCHEMA_VERSION,
        "l": args.l, "n": args.n, "roots": count,
    }
    csv_text = kv_rows_to_csv([("l", args.l), ("n", args.n),
                               ("roots", count)])
    _emit(args, to_json(payload), csv_text)


def _cmd_primes(args: argparse.Namespace) -> None:
    ps = list(arith.primes_up_to(args.limit))
    payload = {
        "kind": "primes",
        "schema_version": REPORT_SCHEMA_VERSION,
        "limit": args.limit, "count": len(ps), "primes": ps,
    }
    csv_text = table_to_csv(["p"], [[p] for p in ps])
    _emit(args, to_json(payload), csv_text)


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="es",
        description="Census and mean-value diagnostics for splittings "
                    "of 4/n into three unit fractions.")
    ap.add_argument("--version", action="version",
                    version=f"es {__version__} (report schema "
                            f"{REPORT_SCHEMA_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--csv", nargs="?", const="-", default=None,
                       metavar="PATH",
                       help="write the report as CSV to PATH; bare flag "
                            "or '-' prints CSV to stdout instead of JSON")
        p.add_argument("--json", action="store_true",
                       help="emit JSON to stdout (the default; spelled "
                            "out for scripts that want it explicit)")

    p = sub.add_parser("solve", help="enumerate all solutions for one n")
    p.add_argument("n", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("split", help="Type I/II ordered counts for a prime")
    p.add_argument("p", type=int)
    add_common(p)
    p.set_defaults(func=_cmd_split)

    p = sub.add_parser("mean", help="mean values over primes below x")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_mean)

    p = sub.add_parser("weightsum", help="reduction weight sum at x")
    p.add_argument("--x", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_weightsum)

    p = sub.add_parser("chain", help="closing majorant chain at x")
    p.add_argument("--x", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("bilinear", help="divisor sum over a dyadic box")
    p.add_argument("--v", "--V", dest="v", type=int, required=True)
    p.add_argument("--w", "--W", dest="w", type=int, required=True)
    p.add_argument("--theta", type=float, default=0.05)
    p.add_argument("--cases", action="store_true",
                   help="partition the box and report per-case sums")
    p.add_argument("--workers", type=int, default=1)
    add_common(p)
    p.set_defaults(func=_cmd_bilinear)

    p = sub.add_parser("lemma", help="smooth-restricted d^2/n sum")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n-max", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_lemma)

    p = sub.add_parser("congruence", help="count roots of 4*l*x^2+1 mod n")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_congruence)

    p = sub.add_parser("primes", help="list primes up to a bound")
    p.add_argument("--limit", type=int, required=True)
    add_common(p)
    p.set_defaults(func=_cmd_primes)

    return ap


_SELFTEST = {
    "domain": DomainError,
    "capacity": CapacityError,
    "configuration": ConfigurationError,
    "invariant": InvariantViolation,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:  # argparse exits for --version/--help/usage errors
        return int(e.code or 0)
    try:
        fake = os.environ.get("ES_SELFTEST_RAISE")
        if fake:
            exc = _SELFTEST.get(fake)
            if exc is None:
                raise DomainError(f"unknown ES_SELFTEST_RAISE value {fake!r}")
            raise exc(f"self-test raise requested ({fake})")
        args.func(args)
        return 0
    except EsmeanError as e:
        sys.stderr.write(f"error: {e}\n")
        for etype, code in _EXIT_CODES.items():
            if isinstance(e, etype):
                return code
        return 6
    except Exception as e:  # noqa: BLE001 - the contract maps everything
        sys.stderr.write(f"unexpected error: {e}\n")
        return 6


if __name__ == "__main__":
    sys.exit(main())
