"""
Mechanical checks of the stable-range results at desk scale.

Each claim is a function taking a :class:`Context` and returning a list of
detail strings; it raises :class:`ClaimFailed` when the computation disagrees
with the expected value.  :func:`run_claims` turns the outcomes into a
deterministic plain-text report.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable

from . import weyl
from .errors import BudgetExceeded, InvariantError
from .root_system import eps_to_simple, make_root_datum
from .stable_range import (HighestWeight, c_big, c_small, highest_weight_vector,
                           range_report, sandwich_check, sl_remark_check)


class ClaimFailed(AssertionError):
    pass


@dataclass(frozen=True)
class Context:
    max_n: int = 7
    cache_dir: object = None
    fault: str | None = None

    def datum(self, kind, n):
        # faults only touch tau_n of type D
        return make_root_datum(kind, n, fault=self.fault if kind == "D" else None)


@dataclass(frozen=True)
class Claim:
    key: str
    statement: str
    check: Callable[[Context], list[str]]


@dataclass(frozen=True)
class Outcome:
    key: str
    statement: str
    status: str  # PASS, FAIL, SKIP, ERROR
    details: tuple[str, ...]


def _expect(cond, msg):
    if not cond:
        raise ClaimFailed(msg)


def _ranks(lo, hi, ctx):
    return range(lo, min(hi, ctx.max_n) + 1)


def _box(n, top):
    return [HighestWeight(a) for a in product(range(top + 1), repeat=n)]


def so_trivial(ctx):
    values = []
    for n in _ranks(3, 7, ctx):
        d = ctx.datum("D", n)
        got = (c_big(d, [0] * n, "literal", cache_dir=ctx.cache_dir),
               c_big(d, [0] * n, "prefix", cache_dir=ctx.cache_dir))
        _expect(got == (n - 2, n - 2), f"D{n}: C = {got}, expected {n - 2}")
        values.append(got[0])
    return [f"n = {_span(ctx, 3, 7)}: C = {values}"]


def sp_trivial(ctx):
    values = []
    for n in _ranks(3, 7, ctx):
        d = ctx.datum("C", n)
        got = (c_big(d, [0] * n, "literal", cache_dir=ctx.cache_dir),
               c_big(d, [0] * n, "prefix", cache_dir=ctx.cache_dir))
        _expect(got == (n - 1, n - 1), f"C{n}: C = {got}, expected {n - 1}")
        values.append(got[0])
    return [f"n = {_span(ctx, 3, 7)}: C = {values}"]


def so_sandwich(ctx):
    details = []
    for n in _ranks(4, 6, ctx):
        d = ctx.datum("D", n)
        top = 0
        for hw in _box(n, 2):
            sandwich_check(d, hw, cache_dir=ctx.cache_dir)
            lit = c_big(d, hw, "literal", cache_dir=ctx.cache_dir)
            pre = c_big(d, hw, "prefix", cache_dir=ctx.cache_dir)
            _expect(lit == pre, f"D{n} {hw.coeffs}: literal {lit} != prefix {pre}")
            top += lit == n - 1
        for k in range(1, n + 1):
            hw = HighestWeight.fundamental(n, k)
            got = c_big(d, hw, cache_dir=ctx.cache_dir)
            _expect(got == n - 2, f"D{n} phi_{k}: C = {got}, expected {n - 2}")
        details.append(f"D{n}: {3 ** n} weights in [{n - 2}, {n - 1}], "
                       f"{top} at the upper end; C(phi_k) = {n - 2} for k = 1..{n}")
    return details


def sp_all_weights(ctx):
    details = []
    for n in _ranks(3, 5, ctx):
        d = ctx.datum("C", n)
        for hw in _box(n, 2):
            got = c_big(d, hw, cache_dir=ctx.cache_dir)
            _expect(got == n - 1, f"C{n} {hw.coeffs}: C = {got}, expected {n - 1}")
        details.append(f"C{n}: C = {n - 1} for all {3 ** n} weights with a_k <= 2")
    return details


def _so3_image(d, m):
    hw = HighestWeight.fundamental(3, 2, m)
    v = tuple(r + l for r, l in zip(d.rho, highest_weight_vector(d, hw)))
    return hw, weyl.apply(weyl.simple_reflection(d, 2), v)


def so3_counterexample(ctx):
    d = ctx.datum("D", 3)
    values = []
    for m in range(0, 11):
        hw, v = _so3_image(d, m)
        half = Fraction(m, 2)
        _expect(v == (2 + half, -half, 1 + half), f"m = {m}: tau_2(rho + m phi_2) = {v}")
        coeff = eps_to_simple(d, v)[1]
        _expect((coeff <= 0) == (m >= 2), f"m = {m}: alpha_2 coefficient {coeff}")
        if m >= 2:
            got = c_big(d, hw, cache_dir=ctx.cache_dir)
            _expect(got == 0, f"m = {m}: C(D3, m phi_2) = {got}")
            values.append(got)
    return ["tau_2(rho + m phi_2) = (2 + m/2, -m/2, 1 + m/2) for m = 0..10",
            "its alpha_2 coefficient is <= 0 exactly when m >= 2",
            f"C(D3, m phi_2) = {values} for m = 2..10"]


def so3_coefficient_formula(ctx):
    d = ctx.datum("D", 3)
    got = [eps_to_simple(d, _so3_image(d, m)[1])[1] for m in range(0, 11)]
    halved = all(c == (1 - Fraction(m, 2)) / 2 for m, c in enumerate(got))
    for m, c in enumerate(got):
        _expect(c == 1 - Fraction(m, 2),
                f"m = {m}: alpha_2 coefficient is {c}, not {1 - Fraction(m, 2)}; "
                f"computed values {'equal' if halved else 'do not equal'} "
                f"(1 - m/2)/2 for all m = 0..10")
    return ["alpha_2 coefficient of tau_2(rho + m phi_2) = 1 - m/2 for m = 0..10"]


def witness_vectors(ctx):
    for n in _ranks(3, 7, ctx):
        d = ctx.datum("D", n)
        got = weyl.apply(weyl.word(d, range(1, n)), d.rho)
        _expect(got == (0,) + tuple(range(n - 1, 0, -1)), f"D{n}: {got}")
        c = ctx.datum("C", n)
        got = weyl.apply(weyl.word(c, range(1, n + 1)), c.rho)
        _expect(got == (-1,) + tuple(range(n, 1, -1)), f"C{n}: {got}")
    return [f"D_n: tau_1...tau_(n-1) rho = (0, n-1, ..., 1); "
            f"C_n: tau_1...tau_n rho = (-1, n, ..., 2); n = {_span(ctx, 3, 7)}"]


def oracle_equivalence(ctx):
    details = []
    for kind, n in (("D", 4), ("C", 3), ("A", 3)):
        d = ctx.datum(kind, n)
        s = weyl.enumerate_strata(d, d.num_positive_roots)
        for q in range(len(s.strata)):
            for g in s.elements(q):
                got = weyl.inversion_length(d, g)
                _expect(got == q, f"{d.name}: {g} at depth {q}, inversions {got}")
        _expect(s.total() == weyl.group_order(d),
                f"{d.name}: {s.total()} elements, expected {weyl.group_order(d)}")
        details.append(f"{d.name}: {s.total()} elements, depth = inversion count")
    return details


def small_le_big(ctx):
    details = []
    for kind, n in (("D", 3), ("D", 4), ("C", 3)):
        d = ctx.datum(kind, n)
        for label, hw in (("trivial", HighestWeight.trivial(n)),
                          ("phi_1", HighestWeight.fundamental(n, 1))):
            small = c_small(d, hw)
            big = c_big(d, hw, cache_dir=ctx.cache_dir)
            _expect(small <= big, f"{d.name} {label}: c = {small} > C = {big}")
            details.append(f"{d.name} {label}: c = {small} <= C = {big}")
    return details


def guaranteed_degrees(ctx):
    got_d, got_c = [], []
    for n in _ranks(4, 6, ctx):
        r = range_report(ctx.datum("D", n), HighestWeight.trivial(n), cache_dir=ctx.cache_dir)
        _expect(r.guaranteed_degree == n - 2, f"D{n}: {r.guaranteed_degree}")
        got_d.append(r.guaranteed_degree)
    for n in _ranks(3, 6, ctx):
        r = range_report(ctx.datum("C", n), HighestWeight.trivial(n), cache_dir=ctx.cache_dir)
        _expect(r.guaranteed_degree == n - 1, f"C{n}: {r.guaranteed_degree}")
        got_c.append(r.guaranteed_degree)
    return [f"D_n, n = {_span(ctx, 4, 6)}: {got_d}", f"C_n, n = {_span(ctx, 3, 6)}: {got_c}"]


def sl_remark(ctx):
    details = []
    for n in _ranks(2, 6, ctx):
        r = sl_remark_check(n, cache_dir=ctx.cache_dir)
        readings = ", ".join(f"{k} = {v}" for k, v in r.readings.items())
        details.append(f"A{n}: C(trivial) = {r.c_trivial_literal} "
                       f"(prefix {r.c_trivial_prefix}); {readings}; "
                       f"least m with C(m phi_1) = 0: {r.sym_threshold}")
        if n in (2, 3):
            _expect(r.sym_threshold is not None, f"A{n}: no m <= {r.scan_cap} with C = 0")
    return details


def _span(ctx, lo, hi):
    hi = min(hi, ctx.max_n)
    return f"{lo}..{hi}" if hi >= lo else "(none)"


CLAIMS = [
    Claim("so-trivial", "C(D_n, trivial) = n-2 in both modes", so_trivial),
    Claim("sp-trivial", "C(C_n, trivial) = n-1 in both modes", sp_trivial),
    Claim("so-sandwich", "n-2 <= C(D_n, V) <= n-1, and C(D_n, phi_k) = n-2", so_sandwich),
    Claim("sp-all-weights", "C(C_n, V) = n-1 for every highest weight", sp_all_weights),
    Claim("so3-counterexample", "C(D_3, m phi_2) = 0 for m >= 2", so3_counterexample),
    Claim("so3-coefficient", "alpha_2 coefficient of tau_2(rho + m phi_2) is 1 - m/2",
          so3_coefficient_formula),
    Claim("witness-vectors", "explicit non-regular images of rho", witness_vectors),
    Claim("oracle-equivalence", "BFS depth equals inversion count", oracle_equivalence),
    Claim("c-le-C", "c(G, V) <= C(G, V)", small_le_big),
    Claim("guaranteed-degrees", "stable range n-2 (type D) and n-1 (type C)", guaranteed_degrees),
    Claim("sl-remark", "SL_{n+1}: trivial constant and Sym^m collapse", sl_remark),
]


def run_claim(claim: Claim, ctx: Context) -> Outcome:
    try:
        details = claim.check(ctx)
        status = "PASS"
    except ClaimFailed as exc:
        status, details = "FAIL", [str(exc)]
    except InvariantError as exc:
        status, details = "ERROR", [f"invariant violated: {exc}"]
    except BudgetExceeded as exc:
        status, details = "SKIP", [f"budget exhausted: {exc}"]
    return Outcome(claim.key, claim.statement, status, tuple(details))


def run_claims(ctx: Context, jobs: int = 1, claims=CLAIMS) -> list[Outcome]:
    if jobs <= 1:
        return [run_claim(c, ctx) for c in claims]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda c: run_claim(c, ctx), claims))


def format_report(outcomes: list[Outcome], ctx: Context) -> str:
    lines = [f"stable-range verification (max n = {ctx.max_n})"]
    for o in outcomes:
        lines.append(f"{o.status:<5} {o.key}: {o.statement}")
        lines.extend(f"      {d}" for d in o.details)
    counts = {s: sum(o.status == s for o in outcomes) for s in ("PASS", "FAIL", "ERROR", "SKIP")}
    lines.append(", ".join(f"{v} {k.lower()}" for k, v in counts.items()))
    return "\n".join(lines) + "\n"
