"""
Weyl groups of types A, C, D as (signed) permutations of eps-coordinates.

An element is a pair ``(perm, signs)`` acting by

    (g . w)[j] = signs[j] * w[perm^-1(j)]

so the value in slot i moves to slot perm(i) and then picks up the sign
attached to its new slot.  Composition is function composition:
``apply(compose(g, h), w) == apply(g, apply(h, w))``.

Elements are stored in bulk as rows of their canonical byte encoding: the
0-based one-line permutation, one byte per slot, followed by a little-endian
bitmask with bit j set when signs[j] == -1.

>>> from borelrange.root_system import make_root_datum
>>> D4 = make_root_datum("D", 4)
>>> sigma = word(D4, [1, 2, 3])
>>> [int(c) for c in apply(sigma, D4.rho)]
[0, 3, 2, 1]
>>> enumerate_strata(D4, 12).counts()
[1, 4, 9, 16, 23, 28, 30, 28, 23, 16, 9, 4, 1]
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import struct
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (BudgetExceeded, CacheError, DimensionError,
                     InvariantError)
from .root_system import Kind, RootDatum

__all__ = [
    "WeylElement", "identity", "simple_reflection", "word", "apply", "compose",
    "inverse", "inversion_length", "group_order",
    "LengthStratification", "enumerate_strata", "stratification",
    "save_strata", "load_strata", "cached_strata",
    "DEFAULT_BUDGET", "FORMAT_VERSION", "apply_rows", "lengths_of_rows",
]

DEFAULT_BUDGET = 10**8  # bytes of canonical encodings held at once
FORMAT_VERSION = 1
_MAGIC = b"WEYLSTRATA\0"

# test-only: tau_n negates just one of the two coordinates it moves (type D)
FAULT_TAU_N_SIGN = "tau_n_sign"


@dataclass(frozen=True)
class WeylElement:
    perm: tuple[int, ...]   # 0-based one-line notation
    signs: tuple[int, ...]  # +1/-1 per target slot

    @property
    def dim(self) -> int:
        return len(self.perm)

    def encode(self) -> bytes:
        mask = sum(1 << j for j, s in enumerate(self.signs) if s < 0)
        return bytes(self.perm) + mask.to_bytes(_mask_len(self.dim), "little")

    @classmethod
    def decode(cls, data: bytes, dim: int) -> "WeylElement":
        perm = tuple(data[:dim])
        mask = int.from_bytes(data[dim:dim + _mask_len(dim)], "little")
        return cls(perm, tuple(-1 if mask >> j & 1 else 1 for j in range(dim)))

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm], "signs": list(self.signs)}


def _mask_len(dim: int) -> int:
    return (dim + 7) // 8


def identity(dim: int) -> WeylElement:
    return WeylElement(tuple(range(dim)), (1,) * dim)


def simple_reflection(datum: RootDatum, i: int) -> WeylElement:
    """The reflection tau_i in the simple root alpha_i (1-based index)."""
    n, d = datum.rank, datum.dim
    if not 1 <= i <= n:
        raise IndexError(f"simple reflection index {i} outside 1..{n}")
    perm = list(range(d))
    signs = [1] * d
    if i < n or datum.kind is Kind.A:
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    elif datum.kind is Kind.C:
        signs[n - 1] = -1
    else:
        perm[n - 2], perm[n - 1] = perm[n - 1], perm[n - 2]
        signs[n - 1] = -1
        if datum.fault != FAULT_TAU_N_SIGN:
            signs[n - 2] = -1
    return WeylElement(tuple(perm), tuple(signs))


def word(datum: RootDatum, indices: Iterable[int]) -> WeylElement:
    """The product tau_{i_1} tau_{i_2} ... (rightmost factor acts first)."""
    g = identity(datum.dim)
    for i in indices:
        g = compose(g, simple_reflection(datum, i))
    return g


def apply(g: WeylElement, w: Sequence) -> tuple:
    if len(w) != g.dim:
        raise DimensionError(f"element of degree {g.dim} applied to length {len(w)}")
    out = [None] * g.dim
    for i, p in enumerate(g.perm):
        out[p] = w[i] if g.signs[p] > 0 else -w[i]
    return tuple(out)


def compose(g: WeylElement, h: WeylElement) -> WeylElement:
    if g.dim != h.dim:
        raise DimensionError("elements of different degree")
    perm = tuple(g.perm[h.perm[i]] for i in range(g.dim))
    ginv = _inverse_perm(g.perm)
    signs = tuple(g.signs[j] * h.signs[ginv[j]] for j in range(g.dim))
    return WeylElement(perm, signs)


def _inverse_perm(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def inverse(g: WeylElement) -> WeylElement:
    pinv = _inverse_perm(g.perm)
    return WeylElement(tuple(pinv), tuple(g.signs[g.perm[i]] for i in range(g.dim)))


def inversion_length(datum: RootDatum, g: WeylElement) -> int:
    """Count positive roots sent outside the set of positive roots."""
    positive = set(datum.positive_roots)
    return sum(1 for beta in datum.positive_roots if apply(g, beta) not in positive)


def group_order(datum: RootDatum) -> int:
    n = datum.rank
    if datum.kind is Kind.A:
        return math.factorial(n + 1)
    if datum.kind is Kind.C:
        return 2**n * math.factorial(n)
    return 2**(n - 1) * math.factorial(n)


# -- bulk operations on encoded rows ------------------------------------------

def _void(rows: np.ndarray) -> np.ndarray:
    rows = np.ascontiguousarray(rows)
    return rows.view(np.dtype((np.void, rows.shape[1]))).ravel()


def _encode_rows(perm: np.ndarray, signs: np.ndarray) -> np.ndarray:
    mask = np.packbits(signs < 0, axis=1, bitorder="little")
    return np.hstack([perm.astype(np.uint8), mask])


def _decode_rows(rows: np.ndarray, dim: int) -> tuple[np.ndarray, np.ndarray]:
    perm = rows[:, :dim].astype(np.intp)
    bits = np.unpackbits(rows[:, dim:], axis=1, bitorder="little")[:, :dim]
    signs = 1 - 2 * bits.astype(np.int64)
    return perm, signs


def _right_multiply(perm, signs, gen: WeylElement):
    """Rows of g * gen for every row g."""
    hp = np.asarray(gen.perm, dtype=np.intp)
    hs = np.asarray(gen.signs, dtype=np.int64)
    ginv = np.argsort(perm, axis=1)
    return perm[:, hp], signs * hs[ginv]


def apply_rows(perm: np.ndarray, signs: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Apply every element (one per row) to the integer vector `v`."""
    out = np.empty(perm.shape, dtype=np.int64)
    np.put_along_axis(out, perm, np.broadcast_to(np.asarray(v, dtype=np.int64),
                                                 perm.shape), axis=1)
    return out * signs


def lengths_of_rows(datum: RootDatum, perm: np.ndarray, signs: np.ndarray,
                    chunk: int = 1 << 16) -> np.ndarray:
    """Inversion counts for every row, through a regular chamber vector.

    A root beta is positive iff <beta, x> > 0 for x = (d, d-1, ..., 1), and
    g(beta) is negative iff <beta, g^-1 x> < 0.
    """
    d = datum.dim
    x = np.arange(d, 0, -1, dtype=np.int64)
    roots = np.array([[int(c) for c in b] for b in datum.positive_roots],
                     dtype=np.int64).reshape(-1, d)
    out = np.empty(len(perm), dtype=np.int64)
    for lo in range(0, len(perm), chunk):
        p, s = perm[lo:lo + chunk], signs[lo:lo + chunk]
        # g^-1 x has coordinate i equal to s[perm[i]] * x[perm[i]]
        y = np.take_along_axis(s * x, p, axis=1)
        out[lo:lo + chunk] = ((y @ roots.T) < 0).sum(axis=1)
    return out


@dataclass(frozen=True, eq=False)
class LengthStratification:
    """Strata W^0, ..., W^q of a Weyl group, as sorted encoded rows."""
    datum: RootDatum
    strata: tuple[np.ndarray, ...]
    _decoded: dict = field(default_factory=dict, repr=False)

    @property
    def complete_up_to(self) -> int:
        return len(self.strata) - 1

    @property
    def record_size(self) -> int:
        return self.datum.dim + _mask_len(self.datum.dim)

    def counts(self) -> list[int]:
        return [len(s) for s in self.strata]

    def total(self) -> int:
        return sum(self.counts())

    def nbytes(self) -> int:
        return sum(s.nbytes for s in self.strata)

    def arrays(self, q: int) -> tuple[np.ndarray, np.ndarray]:
        return _decode_rows(self.strata[q], self.datum.dim)

    def flat(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(perm, signs, length) for every element, strata concatenated in order."""
        if "flat" not in self._decoded:
            rows = np.vstack(self.strata)
            perm, signs = _decode_rows(rows, self.datum.dim)
            q = np.repeat(np.arange(len(self.strata)), self.counts())
            self._decoded["flat"] = (perm, signs, q)
        return self._decoded["flat"]

    def elements(self, q: int) -> list[WeylElement]:
        d = self.datum.dim
        return [WeylElement.decode(r.tobytes(), d) for r in self.strata[q]]

    def truncated(self, qmax: int) -> "LengthStratification":
        if qmax >= self.complete_up_to:
            return self
        return LengthStratification(self.datum, self.strata[:qmax + 1])

    def __repr__(self):
        return (f"LengthStratification({self.datum.name}, "
                f"complete_up_to={self.complete_up_to}, total={self.total()})")


def _check_lengths(datum, rows, q):
    perm, signs = _decode_rows(rows, datum.dim)
    bad = np.flatnonzero(lengths_of_rows(datum, perm, signs) != q)
    if len(bad):
        g = WeylElement.decode(rows[bad[0]].tobytes(), datum.dim)
        raise InvariantError(
            f"{datum.name}: element {g} reached at depth {q} has inversion "
            f"length {inversion_length(datum, g)}")


def enumerate_strata(datum: RootDatum, qmax: int, budget: int = DEFAULT_BUDGET,
                     resume: LengthStratification | None = None
                     ) -> LengthStratification:
    """Breadth-first enumeration of W^0..W^qmax under right multiplication.

    Each level is deduplicated and sorted by canonical encoding, and every
    element's depth is checked against its inversion count.  `qmax` is
    clamped to the number of positive roots (the length of the longest
    element).
    """
    if qmax < 0:
        raise ValueError("qmax must be >= 0")
    qmax = min(qmax, datum.num_positive_roots)
    gens = [simple_reflection(datum, i) for i in range(1, datum.rank + 1)]
    rec = datum.dim + _mask_len(datum.dim)
    if resume is not None:
        levels = list(resume.strata)
    else:
        levels = [np.frombuffer(identity(datum.dim).encode(), np.uint8).reshape(1, rec)]
    used = sum(s.nbytes for s in levels)
    empty = np.empty((0, rec), dtype=np.uint8)
    while len(levels) <= qmax:
        q = len(levels)
        cur = levels[-1]
        prev = levels[-2] if q >= 2 else empty
        need = len(cur) * len(gens) * rec
        if used + need > budget:
            raise BudgetExceeded(
                f"{datum.name}: level {q} needs {need} bytes on top of {used}; "
                f"budget is {budget}")
        perm, signs = _decode_rows(cur, datum.dim)
        cands = np.vstack([_encode_rows(*_right_multiply(perm, signs, g))
                           for g in gens]) if len(cur) else empty
        keys = np.unique(_void(cands))
        keys = keys[~np.isin(keys, _void(prev)) & ~np.isin(keys, _void(cur))]
        new = np.frombuffer(keys.tobytes(), np.uint8).reshape(-1, rec)
        _check_lengths(datum, new, q)
        levels.append(new)
        used += new.nbytes
    return LengthStratification(datum, tuple(levels))


_memo: dict[RootDatum, LengthStratification] = {}
_memo_lock = threading.Lock()


def stratification(datum: RootDatum, qmax: int, cache_dir=None,
                   budget: int = DEFAULT_BUDGET) -> LengthStratification:
    """Strata up to `qmax`, reusing in-process results and an optional disk cache."""
    qmax = min(qmax, datum.num_positive_roots)
    with _memo_lock:
        have = _memo.get(datum)
        if have is None or have.complete_up_to < qmax:
            if cache_dir is not None and datum.fault is None:
                have = cached_strata(datum, qmax, cache_dir, budget=budget, resume=have)
            else:
                have = enumerate_strata(datum, qmax, budget=budget, resume=have)
            _memo[datum] = have
    return have.truncated(qmax)


def clear_memo():
    with _memo_lock:
        _memo.clear()


# -- cache files ---------------------------------------------------------------

def _serialize(strat: LengthStratification) -> bytes:
    d = strat.datum
    header = json.dumps({
        "format_version": FORMAT_VERSION,
        "kind": d.kind.value,
        "n": d.rank,
        "qmax": strat.complete_up_to,
        "record_size": strat.record_size,
    }, sort_keys=True, separators=(",", ":")).encode()
    parts = [_MAGIC, struct.pack("<I", len(header)), header]
    for rows in strat.strata:
        parts.append(struct.pack("<Q", len(rows)))
        parts.append(np.ascontiguousarray(rows).tobytes())
    body = b"".join(parts)
    return body + hashlib.sha256(body).digest()


def save_strata(path, strat: LengthStratification):
    """Write atomically: temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = _serialize(strat)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_strata(path, datum: RootDatum | None = None) -> LengthStratification:
    from .root_system import make_root_datum

    data = Path(path).read_bytes()
    body, digest = data[:-32], data[-32:]
    if len(data) < len(_MAGIC) + 36 or hashlib.sha256(body).digest() != digest:
        raise CacheError(f"{path}: checksum mismatch")
    if not body.startswith(_MAGIC):
        raise CacheError(f"{path}: not a strata file")
    pos = len(_MAGIC)
    (hlen,) = struct.unpack_from("<I", body, pos)
    pos += 4
    header = json.loads(body[pos:pos + hlen])
    pos += hlen
    if header.get("format_version") != FORMAT_VERSION:
        raise CacheError(f"{path}: unsupported format version {header.get('format_version')}")
    if datum is None:
        datum = make_root_datum(header["kind"], header["n"])
    elif (datum.kind.value, datum.rank) != (header["kind"], header["n"]):
        raise CacheError(f"{path}: holds {header['kind']}{header['n']}, wanted {datum.name}")
    rec = header["record_size"]
    strata = []
    for _ in range(header["qmax"] + 1):
        (count,) = struct.unpack_from("<Q", body, pos)
        pos += 8
        chunk = body[pos:pos + count * rec]
        pos += count * rec
        strata.append(np.frombuffer(chunk, np.uint8).reshape(count, rec))
    if pos != len(body):
        raise CacheError(f"{path}: trailing bytes")
    return LengthStratification(datum, tuple(strata))


def cache_path(cache_dir, datum: RootDatum) -> Path:
    return Path(cache_dir) / f"{datum.name}.wstrata"


def cached_strata(datum: RootDatum, qmax: int, cache_dir,
                  budget: int = DEFAULT_BUDGET,
                  resume: LengthStratification | None = None) -> LengthStratification:
    """Load strata from `cache_dir`, extending and rewriting the file if short."""
    qmax = min(qmax, datum.num_positive_roots)
    path = cache_path(cache_dir, datum)
    if path.exists():
        have = load_strata(path, datum)
        for q, rows in enumerate(have.strata):
            _check_lengths(datum, rows, q)
        if have.complete_up_to >= qmax:
            return have
        resume = have
    strat = enumerate_strata(datum, qmax, budget=budget, resume=resume)
    save_strata(path, strat)
    return strat
