"""
Command-line front end.

    borel-range table --group so --n 4..6 --weight trivial
    borel-range report --group sp --n 4 --weight phi4 --format json
    borel-range weyl-count --group so --n 4 --palindrome
    borel-range verify-paper --max-n 5

Exit status: 0 success, 1 failed verification claim, 2 usage error,
3 budget exhausted (partial output), 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product
from pathlib import Path

from . import weyl
from .errors import BudgetExceeded, CacheError, InvalidRankError, InvariantError
from .root_system import Kind, make_root_datum
from .stable_range import HighestWeight, highest_weight_vector, range_report
from .verify import Context, format_report, run_claims

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_INVARIANT = 0, 1, 2, 3, 4

GROUPS = {"so": Kind.D, "sp": Kind.C, "sl": Kind.A, "d": Kind.D, "c": Kind.C, "a": Kind.A}
CACHE_ENV = "STABLE_RANGE_CACHE"


class UsageError(Exception):
    pass


# -- argument grammar ----------------------------------------------------------

def parse_n_range(text: str) -> list[int]:
    """"5", "4..6" or "3,5,7"."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            ns = list(range(int(lo), int(hi) + 1))
        else:
            ns = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad rank range {text!r}") from None
    if not ns:
        raise UsageError(f"empty rank range {text!r}")
    return ns


_PHI = re.compile(r"^(?:(\d+)\*)?phi(\d+)$")


def parse_weights(text: str, n: int) -> list[HighestWeight]:
    """Weight grammar: trivial | a1,...,an | phi<k> | m*phi<k> | box:<K>."""
    text = text.strip().replace(" ", "")
    if text == "trivial":
        return [HighestWeight.trivial(n)]
    if text.startswith("box:"):
        try:
            top = int(text[4:])
        except ValueError:
            raise UsageError(f"bad weight box {text!r}") from None
        if top < 0:
            raise UsageError("weight box bound must be >= 0")
        return [HighestWeight(a) for a in product(range(top + 1), repeat=n)]
    match = _PHI.match(text)
    if match:
        m = int(match.group(1) or 1)
        k = int(match.group(2))
        if not 1 <= k <= n:
            raise UsageError(f"phi{k} does not exist in rank {n}")
        return [HighestWeight.fundamental(n, k, m)]
    try:
        coeffs = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad weight {text!r}") from None
    if len(coeffs) != n:
        raise UsageError(f"weight {text!r} has {len(coeffs)} coefficients, rank is {n}")
    if any(a < 0 for a in coeffs):
        raise UsageError(f"weight {text!r} has a negative coefficient")
    return [HighestWeight(tuple(coeffs))]


def resolve_cache_dir(args) -> Path | None:
    if args.no_cache:
        return None
    if args.cache_dir:
        return Path(args.cache_dir)
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    return Path(".cache")


def _datum(group: str, n: int):
    kind = GROUPS.get(group.lower())
    if kind is None:
        raise UsageError(f"unknown group {group!r}; use so, sp or sl")
    try:
        return make_root_datum(kind, n)
    except InvalidRankError as exc:
        raise UsageError(str(exc)) from None


def _note(datum) -> str:
    if datum.kind is Kind.D and datum.rank < 4:
        return "outside the type D stability hypothesis (n >= 4)"
    if datum.kind is Kind.C and datum.rank < 3:
        return "outside the type C stability hypothesis (n >= 3)"
    return ""


# -- table output --------------------------------------------------------------

def _row(datum, hw, args, cache_dir) -> dict:
    base = {"kind": datum.kind.value, "n": datum.rank, "lambda": list(hw.coeffs)}
    try:
        report = range_report(datum, hw, with_c_small=args.with_c_small,
                              cache_dir=cache_dir, budget=args.budget)
    except BudgetExceeded as exc:
        return {**base, "error": f"budget: {exc}", "note": _note(datum)}
    return {**report.to_json(), "note": _note(datum)}


def _frac_tex(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return rf"{sign}\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _eps(datum_cache, row):
    d = datum_cache(row["kind"], row["n"])
    return highest_weight_vector(d, row["lambda"])


COLUMNS = ["kind", "n", "lambda", "C_literal", "C_prefix", "c_small",
           "rank_bound", "guaranteed_degree", "witness", "note"]


def _cell(row, key):
    v = row.get(key)
    if key == "witness":
        if "error" in row:
            return row["error"]
        if v is None:
            return "-"
        return f"perm={v['perm']} signs={v['signs']} i={v['failing_index']}"
    if key == "lambda":
        return " ".join(str(a) for a in v)
    return "-" if v is None else str(v)


def render(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        for row in rows:
            w.writerow([_cell(row, k) for k in COLUMNS])
        return buf.getvalue()
    if fmt == "tex":
        cache = {}

        def datum_cache(kind, n):
            return cache.setdefault((kind, n), make_root_datum(kind, n))

        lines = [r"\begin{tabular}{llllllll}", r"\hline",
                 r"type & $n$ & $\lambda$ ($\epsilon$-coordinates) & $C$ (literal) & "
                 r"$C$ (prefix) & $c$ & $n-1$ & range \\", r"\hline"]
        for row in rows:
            lam = "(" + ", ".join(_frac_tex(c) for c in _eps(datum_cache, row)) + ")"
            cells = [f"${row['kind']}_{{{row['n']}}}$", str(row["n"]), f"${lam}$"]
            cells += [_cell(row, k) for k in ("C_literal", "C_prefix", "c_small",
                                              "rank_bound", "guaranteed_degree")]
            lines.append(" & ".join(cells) + r" \\")
        lines += [r"\hline", r"\end{tabular}"]
        return "\n".join(lines) + "\n"
    table = [COLUMNS] + [[_cell(r, k) for k in COLUMNS] for r in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(COLUMNS))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n"
                   for r in table)


# -- commands ------------------------------------------------------------------

def cmd_table(args, out) -> int:
    cache_dir = resolve_cache_dir(args)
    cells = []
    for n in parse_n_range(args.n):
        datum = _datum(args.group, n)
        weights = sorted(parse_weights(args.weight, n), key=lambda h: h.coeffs)
        cells += [(datum, hw) for hw in weights]
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        rows = list(pool.map(lambda c: _row(c[0], c[1], args, cache_dir), cells))
    out.write(render(rows, args.format))
    return EXIT_BUDGET if any("error" in r for r in rows) else EXIT_OK


def cmd_report(args, out) -> int:
    ns = parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError("report takes a single rank")
    datum = _datum(args.group, ns[0])
    weights = parse_weights(args.weight, ns[0])
    if len(weights) != 1:
        raise UsageError("report takes a single weight")
    row = _row(datum, weights[0], args, resolve_cache_dir(args))
    if args.format == "json":
        out.write(json.dumps(row, indent=2) + "\n")
    elif args.format == "text":
        for key in COLUMNS:
            out.write(f"{key}: {_cell(row, key)}\n")
    else:
        out.write(render([row], args.format))
    return EXIT_BUDGET if "error" in row else EXIT_OK


def cmd_weyl_count(args, out) -> int:
    ns = parse_n_range(args.n)
    if len(ns) != 1:
        raise UsageError("weyl-count takes a single rank")
    datum = _datum(args.group, ns[0])
    top = datum.num_positive_roots
    qmax = top if args.qmax is None else args.qmax
    if qmax < 0:
        raise UsageError("--qmax must be >= 0")
    cache_dir = resolve_cache_dir(args)
    if cache_dir is None:
        strat = weyl.enumerate_strata(datum, qmax, budget=args.budget)
    else:
        strat = weyl.cached_strata(datum, qmax, cache_dir, budget=args.budget)
    counts = strat.counts()
    full = strat.complete_up_to == top
    result = {"group": datum.name, "counts": counts, "total": sum(counts),
              "complete": full, "order": weyl.group_order(datum)}
    status = EXIT_OK
    if args.palindrome:
        if not full:
            raise UsageError("--palindrome needs the full group (omit --qmax)")
        result["palindrome"] = "PASS" if counts == counts[::-1] else "FAIL"
        status = EXIT_OK if counts == counts[::-1] else EXIT_FAIL
    if args.format == "json":
        out.write(json.dumps(result, indent=2) + "\n")
    else:
        out.write(f"{datum.name}\n")
        for q, c in enumerate(counts):
            out.write(f"|W^{q}| = {c}\n")
        out.write(f"total = {sum(counts)}" + (f" (group order {result['order']})" if full else "") + "\n")
        if args.palindrome:
            out.write(f"palindrome: {result['palindrome']}\n")
    return status


def cmd_verify_paper(args, out) -> int:
    ctx = Context(max_n=args.max_n, cache_dir=resolve_cache_dir(args),
                  fault=weyl.FAULT_TAU_N_SIGN if args.inject_fault else None)
    outcomes = run_claims(ctx, jobs=args.jobs)
    if args.format == "json":
        out.write(json.dumps({"max_n": ctx.max_n, "claims": [
            {"key": o.key, "statement": o.statement, "status": o.status,
             "details": list(o.details)} for o in outcomes]}, indent=2) + "\n")
    else:
        out.write(format_report(outcomes, ctx))
    statuses = {o.status for o in outcomes}
    if "ERROR" in statuses:
        return EXIT_INVARIANT
    if "FAIL" in statuses:
        return EXIT_FAIL
    if "SKIP" in statuses:
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", help=f"strata cache (default: ${CACHE_ENV}, then .cache/)")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")
    common.add_argument("--budget", type=int, default=weyl.DEFAULT_BUDGET,
                        help="bytes of encoded Weyl elements held at once")

    p = argparse.ArgumentParser(prog="borel-range",
                                description="Stable-range constants C(G,V) and c(G,V).")
    sub = p.add_subparsers(dest="command", required=True)

    for name, help_ in (("table", "tabulate constants over ranks and weights"),
                        ("report", "constants for a single group and weight")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--group", required=True, help="so (type D), sp (type C) or sl (type A)")
        s.add_argument("--n", required=True, help="rank: 5, 4..6 or 3,5")
        s.add_argument("--weight", default="trivial",
                       help="trivial | a1,...,an | phi<k> | m*phi<k> | box:<K>")
        s.add_argument("--with-c-small", action="store_true", help="also compute c(G,V)")
        s.add_argument("--format", choices=["json", "csv", "tex", "text"],
                       default="text" if name == "table" else "json")

    s = sub.add_parser("weyl-count", parents=[common], help="sizes of the length strata W^q")
    s.add_argument("--group", required=True)
    s.add_argument("--n", required=True)
    s.add_argument("--qmax", type=int, default=None)
    s.add_argument("--palindrome", action="store_true", help="check |W^q| = |W^(L-q)|")
    s.add_argument("--format", choices=["json", "text"], default="text")

    s = sub.add_parser("verify-paper", parents=[common], help="run every stable-range check")
    s.add_argument("--max-n", type=int, default=7)
    s.add_argument("--format", choices=["json", "text"], default="text")
    s.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return p


COMMANDS = {"table": cmd_table, "report": cmd_report,
            "weyl-count": cmd_weyl_count, "verify-paper": cmd_verify_paper}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if getattr(args, "jobs", 1) < 1 or getattr(args, "budget", 1) < 1:
            raise UsageError("--jobs and --budget must be positive")
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"borel-range: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"borel-range: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantError, CacheError) as exc:
        print(f"borel-range: internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
