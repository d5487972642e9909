"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
errors (bad flags, malformed words, impossible splits), 3 when a budget
is exceeded.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from contextlib import contextmanager

from . import analytic, boundary, linalg, oracle, spectral
from .reproduce import reproduce
from .system import build_system, counterexamples, solve_system, sweep_patterns, system_json
from .words import Word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ENV_MAX_N = "TENSORMOMENTS_MAX_N"
ENV_MAX_POWER_K = "TENSORMOMENTS_MAX_POWER_K"
ENV_PRIMES = "TENSORMOMENTS_PRIMES"
ENV_CRT_PRIMES = "TENSORMOMENTS_CRT_PRIMES"
ENV_TIME_BUDGET = "TENSORMOMENTS_TIME_BUDGET"

BUDGET_HELP = f"""\
budget overrides (flag wins over environment variable):
  --max-n          {ENV_MAX_N}          largest matrix order N (default {spectral.MAX_N})
  --max-power-k    {ENV_MAX_POWER_K}    largest k for dense matrix powers (default {spectral.MAX_DENSE_K})
  --primes         {ENV_PRIMES}         comma-separated primes for eigenvalue nullities
  --crt-primes     {ENV_CRT_PRIMES}     comma-separated CRT moduli (default: enough for the Hadamard bound)
  --time-budget    {ENV_TIME_BUDGET}    wall-clock limit in seconds (default none)

exit codes: 0 pass, 1 check failure, 2 usage error, 3 budget exceeded
"""


class UsageError(ValueError):
    pass


def _env_int(name: str, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        primes = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"primes must be comma-separated integers, got {text!r}") from None
    if not primes:
        raise UsageError("empty prime list")
    for p in primes:
        linalg._check_prime(p)
    return primes


def budgets(args) -> dict:
    """Resolve budgets from flags, then environment, then defaults."""
    max_n = args.max_n if args.max_n is not None else _env_int(ENV_MAX_N, spectral.MAX_N)
    max_k = args.max_power_k if args.max_power_k is not None else _env_int(ENV_MAX_POWER_K, spectral.MAX_DENSE_K)
    primes_text = args.primes if args.primes is not None else os.environ.get(ENV_PRIMES)
    primes = _parse_primes(primes_text) if primes_text else linalg.RANK_PRIMES
    crt_text = args.crt_primes if args.crt_primes is not None else os.environ.get(ENV_CRT_PRIMES)
    crt = _parse_primes(crt_text) if crt_text else None
    seconds = args.time_budget if args.time_budget is not None else _env_int(ENV_TIME_BUDGET, None)
    if max_n < 1 or max_k < 0:
        raise UsageError("budgets must be positive")
    return {"max_n": max_n, "max_k": max_k, "primes": primes, "crt_primes": crt, "seconds": seconds}


@contextmanager
def time_limit(seconds: int | None):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def expire(signum, frame):
        raise spectral.BudgetExceeded(f"time budget of {seconds} s exceeded")

    old = signal.signal(signal.SIGALRM, expire)
    signal.alarm(seconds)
    try:
        yield
    finally:
        signal.alarm(0)
        signal.signal(signal.SIGALRM, old)


def emit(doc, fmt: str, text: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _bool_lines(report: dict, skip=()) -> str:
    lines = []
    for key, value in report.items():
        if key in skip or isinstance(value, (list, dict)):
            continue
        if isinstance(value, bool):
            value = "yes" if value else "no"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


# subcommands


def cmd_system(args, cfg) -> int:
    W = Word.parse(args.word)
    sys_ = build_system(W, args.k)
    verdict = solve_system(sys_)
    doc = system_json(sys_, verdict)
    lines = [f"W = {W.text()}  pattern {list(sys_.pattern)}  k = {sys_.k}"]
    lines.append(f"{len(sys_.rows)} equations in {len(sys_.unknowns)} unknowns")
    if args.rows:
        for i in range(len(sys_.rows)):
            terms = " + ".join(f"{c if c != 1 else ''}{m.label()}" for m, c in sys_.row_terms(i).items())
            lines.append(f"  {sys_.row_label(i)}: {terms} = 0")
    lines.append(f"rank {verdict.rank}, nullity {verdict.nullity}")
    for vec in verdict.nullspace:
        lines.append("  null vector: " + " ".join(str(x) for x in vec))
    if verdict.nullity == 0:
        lines.append("all moments forced to zero")
    elif verdict.conjecture_applicable:
        lines.append("COUNTEREXAMPLE: moments survive although [w_L] < [w_R]")
    else:
        lines.append("moments survive ([w_L] >= [w_R], vanishing not expected)")
    emit(doc, args.format, "\n".join(lines) + "\n")
    return EXIT_FAIL if verdict.conjecture_applicable and verdict.nullity else EXIT_OK


def cmd_sweep(args, cfg) -> int:
    results = sweep_patterns(args.length, args.k)
    bad = counterexamples(results)
    doc = {
        "length": args.length,
        "k": args.k,
        "patterns": [{"pattern": list(p), **v.to_json()} for p, v in results],
        "counterexamples": [list(p) for p in bad],
    }
    lines = [f"{'pattern':<24} {'unknowns':>8} {'rank':>5} {'nullity':>7}"]
    for p, v in results:
        lines.append(f"{str(list(p)):<24} {len(v.unknowns):>8} {v.rank:>5} {v.nullity:>7}")
    if bad:
        lines.append(f"counterexamples: {[list(p) for p in bad]}")
    else:
        lines.append(f"{len(results)} patterns, no counterexample")
    emit(doc, args.format, "\n".join(lines) + "\n")
    return EXIT_FAIL if bad else EXIT_OK


def cmd_spectrum(args, cfg) -> int:
    full = True if args.full else None
    rep = spectral.spectrum(
        args.k,
        full=full,
        det_method=args.det_method,
        primes=cfg["primes"],
        max_n=cfg["max_n"],
        max_k=cfg["max_k"],
        crt_primes=cfg["crt_primes"],
    )
    lines = [f"k = {rep.k}, N = {rep.N}"]
    exact = "" if rep.det.exact is None else f"{rep.det.exact}  "
    lines.append(f"det = {exact}(log10 |det| = {rep.det.log10_abs:.4f}, {rep.det.method})")
    lines.append("eigenvalues: " + rep.eigen_text())
    lines.append("traces: " + " ".join(f"Tr(A^{r})={t}" for r, t in rep.trace_powers.items()))
    for name, ok in rep.checks.items():
        mark = "n/a" if ok is None else ("PASS" if ok else "FAIL")
        lines.append(f"  {name}: {mark}")
    emit(rep.to_json(), args.format, "\n".join(lines) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_table(args, cfg) -> int:
    reports = spectral.table_rows(
        args.kmax, primes=cfg["primes"], max_n=cfg["max_n"], max_k=cfg["max_k"], crt_primes=cfg["crt_primes"]
    )
    if args.format == "json":
        emit([r.to_json() for r in reports], "json", "")
    elif args.format == "csv":
        sys.stdout.write(spectral.table_csv(reports))
    else:
        sys.stdout.write(spectral.table_text(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_analytic(args, cfg) -> int:
    if args.case == "two-letter":
        m = args.m if args.m is not None else 0
        report = analytic.two_letter_chain(args.k, m)
    elif args.case == "induction":
        x = Word.parse(args.x) if args.x else Word.parse("b" * args.k)
        report = analytic.induction_case(args.k, x)
    else:
        report = analytic.akbkc_closed_forms(args.k)
    emit(report, args.format, _bool_lines(report))
    return EXIT_OK if report["holds"] else EXIT_FAIL


def cmd_boundary(args, cfg) -> int:
    report = boundary.CASES[args.case]()
    verdict = report["verdict"]
    text = _bool_lines(report, skip=("verdict",))
    text += f"nullity: {verdict['nullity']}\n"
    for vec in verdict["nullspace"]:
        text += "null vector: " + " ".join(f"{u}={x}" for u, x in zip(verdict["unknowns"], vec)) + "\n"
    emit(report, args.format, text)
    return EXIT_OK if report["holds"] else EXIT_FAIL


def cmd_oracle(args, cfg) -> int:
    profile = oracle.ScalarProfile(kind=args.profile, width=args.width)
    field = oracle.make_field(profile)
    report = oracle.oracle_report(field, oracle.default_grid(profile, args.points))
    lines = [
        f"profile {profile.kind}, width {profile.width}, {args.points}^3 Gauss-Legendre points",
        f"calibration error: {report['calibration error']:.3e}",
        f"max |div T| / max |T|: {report['conservation']['max |div| / max |T|']:.3e}",
        f"max relative moment, |w_L| <= 1: {report['max relative (|w_L| <= 1)']:.3e}",
        f"max identity residual, |w_L| = 2: {report['max identity residual (|w_L| = 2)']:.3e}",
    ]
    for p in report["(aa;bb) + 2(ab;ab)"]:
        a, b = "abc"[p["a"]], "abc"[p["b"]]
        ab = "".join(sorted(a + b))
        lines.append(
            f"({a}{a};{b}{b}) = {p['(aa;bb)']:.6e}, ({ab};{ab}) = {p['(ab;ab)']:.6e}, "
            f"relative residual {p['relative residual']:.2e}"
        )
    lines.append(f"holds: {'yes' if report['holds'] else 'no'}")
    emit(report, args.format, "\n".join(lines) + "\n")
    return EXIT_OK if report["holds"] else EXIT_FAIL


def cmd_reproduce(args, cfg) -> int:
    ledger = reproduce(max_n=cfg["max_n"], primes=cfg["primes"], crt_primes=cfg["crt_primes"])
    emit(ledger.to_json(), args.format, ledger.text())
    return EXIT_OK if ledger.passed else EXIT_FAIL


# parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensormoments",
        description="Exact checks of vanishing integral moments of conserved tensors.",
        epilog=BUDGET_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-n", type=_positive, default=None, help=f"matrix order budget (env {ENV_MAX_N})")
    common.add_argument("--max-power-k", type=int, default=None, help=f"dense power budget (env {ENV_MAX_POWER_K})")
    common.add_argument("--primes", default=None, help=f"comma-separated nullity primes (env {ENV_PRIMES})")
    common.add_argument("--crt-primes", default=None, help=f"comma-separated CRT moduli (env {ENV_CRT_PRIMES})")
    common.add_argument("--time-budget", type=_positive, default=None, help=f"seconds (env {ENV_TIME_BUDGET})")

    def fmt(p, choices=("text", "json")):
        p.add_argument("--format", choices=choices, default="text")
        p.add_argument("--json", dest="format", action="store_const", const="json", help="same as --format json")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("system", parents=[common], help="build and solve one moment system")
    p.add_argument("--word", required=True, help="combined word, e.g. aabcd or a2bcd")
    p.add_argument("--k", type=int, required=True, help="split: length of the left word")
    p.add_argument("--rows", action="store_true", help="print every equation")
    fmt(p)
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("sweep", parents=[common], help="solve one word of every pattern of a length")
    p.add_argument("--length", type=_positive, required=True)
    p.add_argument("--k", type=int, required=True)
    fmt(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", parents=[common], help="determinant, traces and spectrum of A")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--full", action="store_true", help="scan every integer eigenvalue regardless of k")
    p.add_argument("--det-method", choices=("auto", "bareiss", "modular_crt", "float_lu"), default="auto")
    fmt(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("table", parents=[common], help="spectral table rows for k = 1..kmax")
    p.add_argument("--kmax", type=_positive, default=5)
    fmt(p, ("text", "csv", "json"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("analytic", parents=[common], help="closed-form analytic cases")
    p.add_argument("--case", choices=("two-letter", "induction", "akbkc"), required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=int, default=None, help="two-letter case: power of b (0..k)")
    p.add_argument("--x", default=None, help="induction case: k-letter word without a (default b^k)")
    fmt(p)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("boundary", parents=[common], help="cases where moments survive")
    p.add_argument("--case", choices=tuple(boundary.CASES), required=True)
    fmt(p)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("oracle", parents=[common], help="quadrature check on an explicit conserved field")
    p.add_argument("--profile", choices=("gaussian", "bump"), default="gaussian")
    p.add_argument("--width", type=float, default=1.0)
    p.add_argument("--points", type=_positive, default=48, help="Gauss-Legendre points per axis")
    fmt(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reproduce", parents=[common], help="run every worked result as a pass/fail ledger")
    fmt(p)
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = budgets(args)
        with time_limit(cfg["seconds"]):
            return args.func(args, cfg)
    except spectral.BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ArithmeticError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
