"""Extensional function sets up to an arity cap, and batched composition."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bitops
from .bitops import ArityCapError, ENUM_MAX_ARITY, compose_tables
from .boolfn import BoolFn, InputShapeError
from .classes import ClassExpr, member_mask

__all__ = [
    "FnSet", "default_cap", "compose_product", "product_images", "left_closure_tables",
    "first_outside", "class_compose", "bar", "image_search",
]

CHUNK = 1 << 22


def default_cap(fallback: int = 3) -> int:
    """Arity cap from the CLONOID_CAP environment variable, else ``fallback``."""
    raw = os.environ.get("CLONOID_CAP")
    if not raw:
        return fallback
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"CLONOID_CAP must be an integer, got {raw!r}") from None
    if not 1 <= cap <= ENUM_MAX_ARITY:
        raise ArityCapError(f"CLONOID_CAP must lie in [1, {ENUM_MAX_ARITY}]")
    return cap


def _check_cap(cap: int) -> None:
    if not 1 <= cap <= ENUM_MAX_ARITY:
        raise ArityCapError(f"arity cap {cap} outside [1, {ENUM_MAX_ARITY}]")


@dataclass(frozen=True, eq=False)
class FnSet:
    """Per-arity membership bitsets for arities 1..cap (index = truth table)."""

    cap: int
    masks: tuple = field(repr=False)

    def __post_init__(self):
        _check_cap(self.cap)
        if len(self.masks) != self.cap:
            raise InputShapeError("one mask per arity is required")
        fixed = []
        for n, m in enumerate(self.masks, start=1):
            m = np.asarray(m, dtype=bool)
            if m.shape != (1 << (1 << n),):
                raise InputShapeError(f"mask for arity {n} has wrong length")
            m = m.copy()
            m.setflags(write=False)
            fixed.append(m)
        object.__setattr__(self, "masks", tuple(fixed))

    # construction
    @classmethod
    def empty(cls, cap: int) -> "FnSet":
        _check_cap(cap)
        return cls(cap, tuple(np.zeros(1 << (1 << n), dtype=bool) for n in range(1, cap + 1)))

    @classmethod
    def from_fns(cls, fns: Iterable[BoolFn], cap: int) -> "FnSet":
        _check_cap(cap)
        masks = [np.zeros(1 << (1 << n), dtype=bool) for n in range(1, cap + 1)]
        for f in fns:
            if f.arity > cap:
                raise ArityCapError(f"{f} exceeds arity cap {cap}")
            masks[f.arity - 1][f.table] = True
        return cls(cap, tuple(masks))

    @classmethod
    def from_expr(cls, e: ClassExpr, cap: int) -> "FnSet":
        _check_cap(cap)
        return cls(cap, tuple(member_mask(e, n) for n in range(1, cap + 1)))

    @classmethod
    def from_tables(cls, tables: dict, cap: int) -> "FnSet":
        masks = [np.zeros(1 << (1 << n), dtype=bool) for n in range(1, cap + 1)]
        for n, ts in tables.items():
            masks[n - 1][np.asarray(ts, dtype=np.int64)] = True
        return cls(cap, tuple(masks))

    # access
    def mask(self, n: int) -> np.ndarray:
        return self.masks[n - 1]

    def tables(self, n: int) -> np.ndarray:
        return np.flatnonzero(self.masks[n - 1]).astype(np.uint64)

    def fns(self) -> list[BoolFn]:
        return [BoolFn(n, int(t)) for n in range(1, self.cap + 1) for t in self.tables(n)]

    def counts(self) -> tuple[int, ...]:
        return tuple(int(m.sum()) for m in self.masks)

    def __len__(self) -> int:
        return sum(self.counts())

    def __contains__(self, f: BoolFn) -> bool:
        return f.arity <= self.cap and bool(self.masks[f.arity - 1][f.table])

    def __iter__(self):
        return iter(self.fns())

    def is_empty(self) -> bool:
        return not any(m.any() for m in self.masks)

    # set algebra
    def _zip(self, other: "FnSet", op: Callable) -> "FnSet":
        if other.cap != self.cap:
            raise InputShapeError("function sets have different arity caps")
        return FnSet(self.cap, tuple(op(a, b) for a, b in zip(self.masks, other.masks)))

    def __or__(self, other):
        return self._zip(other, np.logical_or)

    def __and__(self, other):
        return self._zip(other, np.logical_and)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a & ~b)

    def __eq__(self, other):
        if not isinstance(other, FnSet) or other.cap != self.cap:
            return NotImplemented
        return all(np.array_equal(a, b) for a, b in zip(self.masks, other.masks))

    def __hash__(self):
        return hash((self.cap,) + tuple(m.tobytes() for m in self.masks))

    def __le__(self, other):
        return all(not (a & ~b).any() for a, b in zip(self.masks, other.masks))

    def matches(self, e: ClassExpr) -> bool:
        return self == FnSet.from_expr(e, self.cap)

    def map_tables(self, fn: Callable[[np.ndarray, int], np.ndarray]) -> "FnSet":
        masks = []
        for n in range(1, self.cap + 1):
            m = np.zeros(1 << (1 << n), dtype=bool)
            t = self.tables(n)
            if len(t):
                m[fn(t, n).astype(np.int64)] = True
            masks.append(m)
        return FnSet(self.cap, tuple(masks))

    def negated(self) -> "FnSet":
        return self.map_tables(lambda t, n: t ^ np.uint64(bitops.full_mask(n)))

    def dualized(self) -> "FnSet":
        def dual_tables(t, n):
            rows = bitops.rows_from_tables(t, n)
            return bitops.tables_from_rows(~rows[:, ::-1], n)
        return self.map_tables(dual_tables)

    def summary(self) -> str:
        return " ".join(f"n={n}:{c}" for n, c in enumerate(self.counts(), start=1))


def bar(k: FnSet) -> FnSet:
    return k.negated()


# ---------------------------------------------------------------- kernels

def _shaped(arrays: Sequence[np.ndarray]) -> list[np.ndarray]:
    r = len(arrays)
    out = []
    for p, a in enumerate(arrays):
        shape = [1] * r
        shape[p] = len(a)
        out.append(np.asarray(a, dtype=np.uint64).reshape(shape))
    return out


def compose_product(g: BoolFn, choices: Sequence[np.ndarray], n: int):
    """Yield (index grids, result tables) chunks for g(f1..fr), fi ranging over choices[i]."""
    r = g.arity
    if len(choices) != r:
        raise InputShapeError("one choice list per argument is required")
    if any(len(c) == 0 for c in choices):
        return
    sizes = [len(c) for c in choices]
    rest = int(np.prod(sizes[1:], dtype=np.int64)) if r > 1 else 1
    step = max(1, CHUNK // max(rest, 1))
    for start in range(0, sizes[0], step):
        part = [np.asarray(choices[0][start:start + step])] + [np.asarray(c) for c in choices[1:]]
        res = compose_tables(g.table, r, _shaped(part), n)
        res = np.broadcast_to(np.asarray(res, dtype=np.uint64), [len(p) for p in part])
        yield start, res


def product_images(g: BoolFn, choices: Sequence[np.ndarray], n: int) -> np.ndarray:
    """All tables g(f1..fr) with fi in choices[i] (deduplicated)."""
    out = [np.unique(res) for _, res in compose_product(g, choices, n)]
    if not out:
        return np.zeros(0, dtype=np.uint64)
    return np.unique(np.concatenate(out))


def first_outside(g: BoolFn, choices: Sequence[np.ndarray], n: int, mask: np.ndarray):
    """First tuple (as tables) with g(tuple) outside mask, or None."""
    for start, res in compose_product(g, choices, n):
        bad = ~mask[res.astype(np.int64)]
        if bad.any():
            idx = np.unravel_index(int(np.flatnonzero(bad.reshape(-1))[0]), res.shape)
            tup = [int(choices[0][start + idx[0]])] + [int(choices[p][idx[p]]) for p in range(1, len(choices))]
            return tup, int(res[idx])
    return None


def _unique_rows(rows: np.ndarray, n: int):
    """np.unique(rows, axis=0, return_index=True), packing rows into one word when they fit."""
    width = rows.shape[1] << n
    if width <= 64:
        shift = np.arange(rows.shape[1], dtype=np.uint64) << np.uint64(n)
        keys = np.bitwise_or.reduce(rows << shift[None, :], axis=1)
        _, idx = np.unique(keys, return_index=True)
        return rows[idx], idx
    return np.unique(rows, axis=0, return_index=True)


def _mux(f: np.ndarray, hi: np.ndarray, lo: np.ndarray) -> np.ndarray:
    return (f & hi) | (~f & lo)


def image_search(g: BoolFn, choices: np.ndarray, n: int, mask=None):
    """Images g(f1..fr) with every fi in ``choices`` (n-ary tables).

    Arguments are substituted one at a time; after each step only distinct vectors of
    cofactor tables are kept, so the cost follows the number of distinct partial results
    rather than len(choices)**r.  Returns (images, witness) where witness is the first
    tuple whose image falls outside ``mask`` (None if none or no mask was given).
    ``mask`` is a boolean array indexed by table, or a callable mapping tables to booleans.
    """
    r = g.arity
    choices = np.unique(np.asarray(choices, dtype=np.uint64))
    if not len(choices):
        return np.zeros(0, dtype=np.uint64), None
    full = np.uint64(bitops.full_mask(n))
    vals = g.values()
    # vectors[i, s]: table of g(f_1..f_j, s) for the j arguments fixed so far, s in {0,1}^(r-j)
    vectors = np.array([[full if v else np.uint64(0) for v in vals]], dtype=np.uint64)
    levels = []  # per step: (parent index, choice index) of each kept vector
    for _ in range(r):
        half = vectors.shape[1] // 2
        step = max(1, CHUNK // max(len(choices), 1))
        parts, parents, picks = [], [], []
        for start in range(0, len(vectors), step):
            block = vectors[start:start + step]
            hi = block[:, None, half:]
            lo = block[:, None, :half]
            new = _mux(choices[None, :, None], hi, lo) & full
            new = new.reshape(-1, half)
            uniq, idx = _unique_rows(new, n)
            parts.append(uniq)
            parents.append(start + idx // len(choices))
            picks.append(idx % len(choices))
        allv = np.concatenate(parts)
        uniq, idx = _unique_rows(allv, n)
        levels.append((np.concatenate(parents)[idx], np.concatenate(picks)[idx]))
        vectors = uniq
    images = vectors[:, 0]
    witness = None
    if mask is not None:
        inside = mask(images) if callable(mask) else mask[images.astype(np.int64)]
        bad = np.flatnonzero(~np.asarray(inside, dtype=bool))
        if len(bad):
            i = int(bad[0])
            tup = []
            for parent, pick in reversed(levels):
                tup.append(int(choices[pick[i]]))
                i = int(parent[i])
            witness = (tup[::-1], int(images[bad[0]]))
    return images, witness


def left_closure_tables(gens: Sequence[BoolFn], seed: np.ndarray, n: int) -> np.ndarray:
    """Closure of a set of n-ary tables under the generators (iterated to a fixpoint)."""
    have = np.zeros(1 << (1 << n), dtype=bool)
    have[np.asarray(seed, dtype=np.int64)] = True
    while True:
        current = np.flatnonzero(have).astype(np.uint64)
        before = len(current)
        for g in gens:
            images, _ = image_search(g, np.flatnonzero(have).astype(np.uint64), n)
            have[images.astype(np.int64)] = True
        if int(have.sum()) == before:
            return np.flatnonzero(have).astype(np.uint64)


def class_compose(outer: FnSet, inner: FnSet) -> FnSet:
    """I J: every g(f1..fr) with g in I and f1..fr in J of one arity, within the cap."""
    if outer.cap != inner.cap:
        raise InputShapeError("function sets have different arity caps")
    cap = outer.cap
    out = {}
    for m in range(1, cap + 1):
        fs = inner.tables(m)
        acc = []
        if len(fs):
            for r in range(1, cap + 1):
                for gt in outer.tables(r):
                    acc.append(image_search(BoolFn(r, int(gt)), fs, m)[0])
        out[m] = np.unique(np.concatenate(acc)) if acc else np.zeros(0, dtype=np.uint64)
    return FnSet.from_tables(out, cap)
