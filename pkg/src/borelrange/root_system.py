"""
Exact root data for the classical types A_n, C_n and D_n.

Weights are tuples of :class:`fractions.Fraction` giving coordinates against
the standard functionals eps_1, ..., eps_d.  For C_n and D_n the ambient
dimension d equals the rank n.  For A_n (the group SL_{n+1}) the ambient
dimension is n + 1 and weights are taken modulo the all-ones vector; every
vector produced here is normalized to coordinate sum zero.

>>> D4 = make_root_datum("D", 4)
>>> [str(c) for c in D4.rho]
['3', '2', '1', '0']
>>> [str(c) for c in rho_simple_coeffs(D4)]
['3', '5', '3', '3']
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, InvalidRankError

__all__ = [
    "Kind", "WeightVec", "SimpleCoords", "RootDatum",
    "make_root_datum", "rho_simple_coeffs", "eps_to_simple", "simple_to_eps",
    "eps_to_simple_matrix", "is_dominant", "is_dominant_regular",
    "weight_to_json", "weight_from_json",
]

# coordinates against eps_1..eps_d
WeightVec = tuple[Fraction, ...]
# coefficients against alpha_1..alpha_n
SimpleCoords = tuple[Fraction, ...]

ZERO = Fraction(0)
HALF = Fraction(1, 2)


class Kind(str, enum.Enum):
    A = "A"
    C = "C"
    D = "D"

    def __str__(self):
        return self.value


_MIN_RANK = {Kind.A: 1, Kind.C: 1, Kind.D: 2}


def _unit(d: int, i: int, c=1) -> WeightVec:
    v = [ZERO] * d
    v[i] = Fraction(c)
    return tuple(v)


def _add(*vs: Sequence[Fraction]) -> WeightVec:
    return tuple(sum(cs, ZERO) for cs in zip(*vs))


def _sub(v, w) -> WeightVec:
    return tuple(a - b for a, b in zip(v, w))


def _scale(c, v) -> WeightVec:
    return tuple(c * a for a in v)


def _center(v: Sequence[Fraction]) -> WeightVec:
    mean = Fraction(sum(v, ZERO), len(v))
    return tuple(Fraction(a) - mean for a in v)


@dataclass(frozen=True)
class RootDatum:
    """Immutable root data for one classical type and rank.

    `fault` exists only for mutation-testing the verification harness; see
    :func:`borelrange.weyl.simple_reflection`.
    """
    kind: Kind
    rank: int
    dim: int
    simple_roots: tuple[WeightVec, ...]
    positive_roots: tuple[WeightVec, ...]
    rho: WeightVec
    fundamental_weights: tuple[WeightVec, ...]
    fault: str | None = None

    @property
    def name(self) -> str:
        return f"{self.kind.value}{self.rank}"

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def __repr__(self):
        tag = f", fault={self.fault!r}" if self.fault else ""
        return f"RootDatum({self.name}{tag})"


def _positive_roots(kind: Kind, n: int, d: int) -> list[WeightVec]:
    e = [_unit(d, i) for i in range(d)]
    roots = []
    if kind is Kind.A:
        for i in range(d):
            for j in range(i + 1, d):
                roots.append(_sub(e[i], e[j]))
        return roots
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(_sub(e[i], e[j]))
            roots.append(_add(e[i], e[j]))
        if kind is Kind.C:
            roots.append(_scale(2, e[i]))
    return roots


def _simple_roots(kind: Kind, n: int, d: int) -> list[WeightVec]:
    e = [_unit(d, i) for i in range(d)]
    simple = [_sub(e[i], e[i + 1]) for i in range(n - 1)]
    if kind is Kind.A:
        simple.append(_sub(e[n - 1], e[n]))
    elif kind is Kind.C:
        simple.append(_scale(2, e[n - 1]))
    else:
        simple.append(_add(e[n - 2], e[n - 1]))
    return simple


def _fundamental_weights(kind: Kind, n: int, d: int) -> list[WeightVec]:
    def first(k):
        return tuple(Fraction(1) if i < k else ZERO for i in range(d))

    if kind is Kind.A:
        return [_center(first(k)) for k in range(1, n + 1)]
    if kind is Kind.C:
        return [first(k) for k in range(1, n + 1)]
    phis = [first(k) for k in range(1, n - 1)]
    half = tuple(HALF for _ in range(n))
    phis.append(half[:-1] + (-HALF,))
    phis.append(half)
    return phis


def make_root_datum(kind, n: int, fault: str | None = None) -> RootDatum:
    """Build the root datum of type `kind` ("A", "C" or "D") and rank `n`."""
    kind = Kind(str(kind).upper())
    if not isinstance(n, int) or n < _MIN_RANK[kind]:
        raise InvalidRankError(
            f"type {kind.value} needs rank >= {_MIN_RANK[kind]}, got {n!r}")
    d = n + 1 if kind is Kind.A else n
    pos = _positive_roots(kind, n, d)
    rho = _scale(HALF, _add(*pos))
    return RootDatum(
        kind=kind,
        rank=n,
        dim=d,
        simple_roots=tuple(_simple_roots(kind, n, d)),
        positive_roots=tuple(pos),
        rho=rho,
        fundamental_weights=tuple(_fundamental_weights(kind, n, d)),
        fault=fault,
    )


def rho_simple_coeffs(datum: RootDatum) -> SimpleCoords:
    """Coefficients of rho against the simple roots, from the closed forms.

    Type A uses r_i = i(n + 1 - i)/2, the standard value for SL_{n+1}.
    """
    n = datum.rank
    if datum.kind is Kind.D:
        r = [Fraction((2 * n - i - 1) * i, 2) for i in range(1, n - 1)]
        r += [Fraction(n * (n - 1), 4)] * 2
    elif datum.kind is Kind.C:
        r = [Fraction((2 * n - i + 1) * i, 2) for i in range(1, n)]
        r.append(Fraction(n * (n + 1), 4))
    else:
        r = [Fraction(i * (n + 1 - i), 2) for i in range(1, n + 1)]
    return tuple(r)


def _check_dim(datum: RootDatum, v, expected: int):
    if len(v) != expected:
        raise DimensionError(
            f"{datum.name} expects length {expected}, got {len(v)}")


def eps_to_simple(datum: RootDatum, w: Sequence) -> SimpleCoords:
    """Rewrite an eps-coordinate vector in the basis of simple roots."""
    _check_dim(datum, w, datum.dim)
    n = datum.rank
    y = [Fraction(c) for c in w]
    if datum.kind is Kind.A:
        y = list(_center(y))
    partial = []
    acc = ZERO
    for c in y:
        acc += c
        partial.append(acc)
    if datum.kind is Kind.A:
        return tuple(partial[:n])
    if datum.kind is Kind.C:
        return tuple(partial[:n - 1]) + (partial[n - 1] / 2,)
    head = partial[n - 2]
    return tuple(partial[:n - 2]) + ((head - y[n - 1]) / 2,
                                     (head + y[n - 1]) / 2)


def simple_to_eps(datum: RootDatum, x: Sequence) -> WeightVec:
    """Inverse of :func:`eps_to_simple`."""
    _check_dim(datum, x, datum.rank)
    out = [ZERO] * datum.dim
    for c, alpha in zip(x, datum.simple_roots):
        c = Fraction(c)
        if c:
            for j, a in enumerate(alpha):
                if a:
                    out[j] += c * a
    return tuple(out)


def eps_to_simple_matrix(datum: RootDatum) -> tuple[tuple[Fraction, ...], ...]:
    """The rank x dim matrix E with eps_to_simple(w) == E @ w."""
    cols = [eps_to_simple(datum, _unit(datum.dim, j)) for j in range(datum.dim)]
    return tuple(tuple(col[i] for col in cols) for i in range(datum.rank))


def is_dominant(datum: RootDatum, w) -> bool:
    """True iff every simple-root coefficient of `w` is >= 0."""
    return all(c >= 0 for c in eps_to_simple(datum, w))


def is_dominant_regular(datum: RootDatum, w) -> bool:
    """True iff every simple-root coefficient of `w` is > 0."""
    return all(c > 0 for c in eps_to_simple(datum, w))


def weight_to_json(w: Sequence) -> list[str]:
    """Encode a rational vector as a list of "p/q" strings ("p" when q == 1)."""
    return [str(Fraction(c)) for c in w]


def weight_from_json(items: Sequence[str]) -> WeightVec:
    return tuple(Fraction(s) for s in items)
