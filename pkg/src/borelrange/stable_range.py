"""
Stable-range constants for split groups of type A, C and D.

For a highest weight lambda,

    C(G, V) = max{ q : sigma(rho + lambda) > 0 for every sigma in W^q }

where "> 0" means every simple-root coefficient is strictly positive.  The
sweep over W^q happens in bulk: rho + lambda and the eps-to-simple matrix are
scaled by their least common denominators, which keeps every comparison an
exact integer one.

Two readings of "max" are computed.  ``literal`` takes the largest q whose
stratum passes; ``prefix`` takes the largest q such that every stratum up to
and including q passes.  They agree in every case checked so far, but the
code never assumes it.

>>> from borelrange.root_system import make_root_datum
>>> c_big(make_root_datum("D", 5), [0] * 5)
3
>>> c_big(make_root_datum("C", 4), [0, 0, 0, 1])
3
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import weyl
from .errors import BudgetExceeded, DimensionError, InvariantError
from .root_system import (Kind, RootDatum, WeightVec, eps_to_simple,
                          eps_to_simple_matrix, weight_to_json)
from .weyl import LengthStratification, WeylElement

__all__ = [
    "HighestWeight", "RangeReport", "SLRemark",
    "fundamental_weights", "highest_weight_vector", "stratum_flags", "c_big",
    "sandwich_check", "weights_of_irrep", "c_small", "range_report",
    "witness_non_dominant", "sl_remark_check", "MODES",
]

MODES = ("literal", "prefix")
C_SMALL_BUDGET = 10**7


@dataclass(frozen=True)
class HighestWeight:
    """lambda = sum a_k phi_k with nonnegative integer a_k."""
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coeffs)
        if any(a < 0 for a in coeffs):
            raise ValueError(f"highest weight coefficients must be >= 0: {coeffs}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, hw) -> "HighestWeight":
        return hw if isinstance(hw, cls) else cls(tuple(hw))

    @classmethod
    def trivial(cls, n: int) -> "HighestWeight":
        return cls((0,) * n)

    @classmethod
    def fundamental(cls, n: int, k: int, m: int = 1) -> "HighestWeight":
        if not 1 <= k <= n:
            raise ValueError(f"fundamental weight index {k} outside 1..{n}")
        return cls(tuple(m if i == k else 0 for i in range(1, n + 1)))

    def is_trivial(self) -> bool:
        return not any(self.coeffs)


def fundamental_weights(datum: RootDatum) -> list[WeightVec]:
    return list(datum.fundamental_weights)


def highest_weight_vector(datum: RootDatum, hw) -> WeightVec:
    hw = HighestWeight.of(hw)
    if len(hw.coeffs) != datum.rank:
        raise DimensionError(f"{datum.name} needs {datum.rank} coefficients, got {len(hw.coeffs)}")
    out = [Fraction(0)] * datum.dim
    for a, phi in zip(hw.coeffs, datum.fundamental_weights):
        if a:
            for j, c in enumerate(phi):
                out[j] += a * c
    return tuple(out)


def _shifted(datum, hw) -> WeightVec:
    lam = highest_weight_vector(datum, hw)
    return tuple(r + l for r, l in zip(datum.rho, lam))


def _integer_form(datum: RootDatum, v: Sequence[Fraction]):
    """Integer versions of v and of the eps-to-simple matrix (positive scalings)."""
    s = math.lcm(*(Fraction(c).denominator for c in v))
    E = eps_to_simple_matrix(datum)
    t = math.lcm(*(c.denominator for row in E for c in row))
    vi = np.array([int(c * s) for c in v], dtype=np.int64)
    Ei = np.array([[int(c * t) for c in row] for row in E], dtype=np.int64)
    return vi, Ei


def _regular_mask(datum, perm, signs, v) -> np.ndarray:
    vi, Ei = _integer_form(datum, v)
    coeffs = weyl.apply_rows(perm, signs, vi) @ Ei.T
    return (coeffs > 0).all(axis=1)


def stratum_flags(datum: RootDatum, v: Sequence, strata: LengthStratification) -> list[bool]:
    """flags[q] is True iff sigma(v) is dominant regular for all sigma in W^q."""
    perm, signs, q = strata.flat()
    ok = _regular_mask(datum, perm, signs, v)
    fails = np.bincount(q[~ok], minlength=len(strata.strata))
    return [bool(f == 0) for f in fails]


def _constant_from_flags(flags: Sequence[bool], mode: str) -> int:
    if mode == "literal":
        passing = [q for q, ok in enumerate(flags) if ok]
        return passing[-1] if passing else -1
    for q, ok in enumerate(flags):
        if not ok:
            return q - 1
    return len(flags) - 1


def _strata(datum, qmax, strata, cache_dir, budget=weyl.DEFAULT_BUDGET):
    if strata is not None and strata.complete_up_to >= min(qmax, datum.num_positive_roots):
        return strata.truncated(qmax)
    return weyl.stratification(datum, qmax, cache_dir=cache_dir, budget=budget)


def _c_big_both(datum, hw, strata=None, cache_dir=None, budget=weyl.DEFAULT_BUDGET):
    v = _shifted(datum, hw)
    top = datum.num_positive_roots
    flags = stratum_flags(datum, v, _strata(datum, top, strata, cache_dir, budget))
    return _constant_from_flags(flags, "literal"), _constant_from_flags(flags, "prefix")


def c_big(datum: RootDatum, hw, mode: str = "literal",
          strata: LengthStratification | None = None, cache_dir=None,
          budget: int = weyl.DEFAULT_BUDGET) -> int:
    """The constant C(G, V) for the representation with highest weight `hw`.

    ``literal`` sweeps every stratum up to the longest element; ``prefix``
    stops at the first stratum that fails.  A return value of -1 would mean
    even the identity fails, which cannot happen for dominant lambda.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    v = _shifted(datum, hw)
    top = datum.num_positive_roots
    if mode == "literal":
        return _constant_from_flags(
            stratum_flags(datum, v, _strata(datum, top, strata, cache_dir, budget)), mode)
    q = min(datum.rank + 1, top)
    while True:
        flags = stratum_flags(datum, v, _strata(datum, q, strata, cache_dir, budget))
        if not all(flags) or q >= top:
            return _constant_from_flags(flags, mode)
        q = min(2 * q, top)


def _first_failing_index(datum, v) -> int:
    for i, c in enumerate(eps_to_simple(datum, v), start=1):
        if c <= 0:
            return i
    return 0


def witness_non_dominant(datum: RootDatum, hw, q: int,
                         strata: LengthStratification | None = None,
                         cache_dir=None, budget: int = weyl.DEFAULT_BUDGET
                         ) -> tuple[WeylElement, int] | None:
    """An element of W^q taking rho + lambda out of the regular cone.

    Returns the failing element with the least canonical encoding, together
    with the 1-based index of its first non-positive simple coefficient, or
    None when every element of W^q passes (or W^q is empty).
    """
    if q < 0:
        raise ValueError("q must be >= 0")
    if q > datum.num_positive_roots:
        return None
    s = _strata(datum, q, strata, cache_dir, budget)
    perm, signs = s.arrays(q)
    v = _shifted(datum, hw)
    bad = np.flatnonzero(~_regular_mask(datum, perm, signs, v))
    if not len(bad):
        return None
    g = WeylElement.decode(s.strata[q][bad[0]].tobytes(), datum.dim)
    return g, _first_failing_index(datum, weyl.apply(g, v))


def sandwich_check(datum: RootDatum, hw, strata=None, cache_dir=None) -> tuple[int, int]:
    """Bounds n-2 <= C(G, V) <= n-1 for type D, n >= 4, checked on `hw`.

    The upper bound is realized by tau_1 ... tau_n, which must have length n
    and leave a non-positive alpha_1 coefficient on rho + lambda.
    """
    if datum.kind is not Kind.D or datum.rank < 4:
        raise ValueError(f"sandwich bounds apply to type D with n >= 4, not {datum.name}")
    n = datum.rank
    lower, upper = n - 2, n - 1
    sigma = weyl.word(datum, range(1, n + 1))
    if weyl.inversion_length(datum, sigma) != n:
        raise InvariantError(f"tau_1...tau_n has length {weyl.inversion_length(datum, sigma)} in {datum.name}")
    first = eps_to_simple(datum, weyl.apply(sigma, _shifted(datum, hw)))[0]
    if first > 0:
        raise InvariantError(f"{datum.name}, {hw}: tau_1...tau_n keeps alpha_1 coefficient {first}")
    value = c_big(datum, hw, "literal", strata=strata, cache_dir=cache_dir)
    if not lower <= value <= upper:
        raise InvariantError(f"{datum.name}, {hw}: C = {value} outside [{lower}, {upper}]")
    return lower, upper


# -- weights of irreducible representations ------------------------------------

def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _in_chamber(datum, mu) -> bool:
    return all(_dot(mu, alpha) >= 0 for alpha in datum.simple_roots)


def _orbit(datum, mu, limit) -> set:
    gens = [weyl.simple_reflection(datum, i) for i in range(1, datum.rank + 1)]
    seen = {tuple(mu)}
    frontier = [tuple(mu)]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                u = weyl.apply(g, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        if len(seen) > limit:
            raise BudgetExceeded(f"orbit of {weight_to_json(mu)} exceeds {limit} weights")
        frontier = nxt
    return seen


def weights_of_irrep(datum: RootDatum, hw, limit: int = 10**6) -> set[WeightVec]:
    """The set of weights (multiplicities dropped) of the irreducible rep.

    Dominant weights mu = lambda - sum c_i alpha_i with integer c_i >= 0;
    since dominant weights have nonnegative simple coordinates, each c_i is
    bounded by the corresponding coordinate of lambda.  The answer is the
    union of their Weyl orbits.
    """
    lam = highest_weight_vector(datum, hw)
    top = eps_to_simple(datum, lam)
    bounds = [math.floor(c) for c in top]
    if math.prod(b + 1 for b in bounds) > limit:
        raise BudgetExceeded(f"{math.prod(b + 1 for b in bounds)} candidate dominant weights")
    weights: set[WeightVec] = set()
    for cs in product(*(range(b + 1) for b in bounds)):
        mu = tuple(l - sum((c * alpha[j] for c, alpha in zip(cs, datum.simple_roots)), Fraction(0))
                   for j, l in enumerate(lam))
        if _in_chamber(datum, mu):
            weights |= _orbit(datum, mu, limit)
    return weights


def c_small(datum: RootDatum, hw, qmax: int | None = None, mode: str = "literal",
            budget: int = C_SMALL_BUDGET) -> int:
    """The original constant c(G, V), by brute force.

    The weights of the q-th exterior power of u* are the negated sums of q
    distinct positive roots, so level q passes iff rho - sum(S) + w is
    dominant regular for every q-subset S and every weight w of V.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    R = datum.num_positive_roots
    qmax = R if qmax is None else min(qmax, R)
    rho = eps_to_simple(datum, datum.rho)
    roots = [eps_to_simple(datum, b) for b in datum.positive_roots]
    base = sorted({tuple(r + x for r, x in zip(rho, eps_to_simple(datum, w)))
                   for w in weights_of_irrep(datum, hw)})
    flags = []
    for q in range(qmax + 1):
        cost = math.comb(R, q) * len(base)
        if cost > budget:
            raise BudgetExceeded(f"{datum.name} level {q}: {cost} evaluations > {budget}")
        ok = True
        for S in combinations(roots, q):
            total = [sum(col) for col in zip(*S)] if S else [0] * datum.rank
            if not all(all(b > t for b, t in zip(point, total)) for point in base):
                ok = False
                break
        flags.append(ok)
        if not ok and mode == "prefix":
            break
    return _constant_from_flags(flags, mode)


# -- reports -------------------------------------------------------------------

@dataclass
class RangeReport:
    kind: str
    n: int
    lam: tuple[int, ...]
    C_literal: int
    C_prefix: int
    c_small: int | None
    rank_bound: int  # lower bound on m(G(R)), namely rank - 1
    guaranteed_degree: int
    witness: tuple[WeylElement, int] | None = None
    witness_q: int | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        w = None
        if self.witness is not None:
            g, idx = self.witness
            w = {**g.to_json(), "failing_index": idx}
        return {
            "kind": self.kind,
            "n": self.n,
            "lambda": list(self.lam),
            "C_literal": self.C_literal,
            "C_prefix": self.C_prefix,
            "c_small": self.c_small,
            "rank_bound": self.rank_bound,
            "guaranteed_degree": self.guaranteed_degree,
            "witness": w,
        }


def range_report(datum: RootDatum, hw, with_c_small: bool = False,
                 strata=None, cache_dir=None, budget: int = weyl.DEFAULT_BUDGET,
                 c_small_budget: int = C_SMALL_BUDGET) -> RangeReport:
    """All constants for one (group, highest weight) pair.

    The witness is taken from the first failing stratum, q = C_prefix + 1.
    """
    hw = HighestWeight.of(hw)
    lit, pre = _c_big_both(datum, hw, strata=strata, cache_dir=cache_dir, budget=budget)
    small = c_small(datum, hw, budget=c_small_budget) if with_c_small else None
    rank_bound = datum.rank - 1
    witness_q = pre + 1
    witness = witness_non_dominant(datum, hw, witness_q, strata=strata,
                                   cache_dir=cache_dir, budget=budget)
    report = RangeReport(
        kind=datum.kind.value, n=datum.rank, lam=hw.coeffs,
        C_literal=lit, C_prefix=pre, c_small=small,
        rank_bound=rank_bound, guaranteed_degree=min(rank_bound, pre),
        witness=witness, witness_q=witness_q if witness else None,
    )
    if pre > lit or (small is not None and small > lit):
        raise InvariantError(f"inconsistent constants in {report.to_json()}")
    return report


@dataclass
class SLRemark:
    n: int
    c_trivial_literal: int
    c_trivial_prefix: int
    readings: dict[str, int]
    sym_threshold: int | None
    scan_cap: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "C_trivial_literal": self.c_trivial_literal,
            "C_trivial_prefix": self.c_trivial_prefix,
            "readings": dict(self.readings),
            "sym_threshold": self.sym_threshold,
            "scan_cap": self.scan_cap,
        }


def sl_remark_check(n: int, m_cap: int = 50, cache_dir=None) -> SLRemark:
    """C(SL_{n+1}, trivial) by brute force, and the least m with C(Sym^m) = 0.

    Candidate closed forms are reported, not asserted.
    """
    from .root_system import make_root_datum

    if not 1 <= n <= 6:
        raise BudgetExceeded(f"SL_{n + 1} check limited to n <= 6")
    datum = make_root_datum("A", n)
    lit, pre = _c_big_both(datum, HighestWeight.trivial(n), cache_dir=cache_dir)
    readings = {
        "largest_int_below_n/2": math.ceil(n / 2) - 1,
        "floor(n/2)": n // 2,
    }
    threshold = None
    for m in range(1, m_cap + 1):
        if c_big(datum, HighestWeight.fundamental(n, 1, m), "literal", cache_dir=cache_dir) == 0:
            threshold = m
            break
    return SLRemark(n, lit, pre, readings, threshold, m_cap)
