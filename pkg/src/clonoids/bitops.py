"""Truth-table bit tricks shared by every module.

A table of an n-ary function is an integer whose bit ``i`` holds the value on
the tuple whose big-endian binary expansion (x1 most significant) is ``i``.
Up to arity 6 tables fit in ``np.uint64`` and whole families of functions are
processed as numpy arrays; above that Python ints are used.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

PACKED_MAX_ARITY = 6
ENUM_MAX_ARITY = 4  # 2^(2^4) = 65536 is the largest exhaustive space


class ArityCapError(ValueError):
    """Raised when a request would enumerate an arity above the supported cap."""


def npoints(n: int) -> int:
    return 1 << n


def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def points(n: int) -> np.ndarray:
    """All n-tuples as a (2^n, n) uint8 array, row i = binary expansion of i."""
    idx = np.arange(1 << n)
    shifts = np.arange(n - 1, -1, -1)
    return ((idx[:, None] >> shifts) & 1).astype(np.uint8)


@lru_cache(maxsize=None)
def projection_table(i: int, n: int) -> int:
    """Table of x_{i+1} at arity n (0-based i)."""
    bit = n - 1 - i
    t = 0
    for p in range(1 << n):
        if (p >> bit) & 1:
            t |= 1 << p
    return t


@lru_cache(maxsize=None)
def weights(n: int) -> np.ndarray:
    return points(n).sum(axis=1).astype(np.int64)


def table_dtype(n: int):
    if n > PACKED_MAX_ARITY:
        return object
    return np.uint64


def as_tables(values, n: int) -> np.ndarray:
    """Coerce ints (or an array) to the packed table array type for arity n."""
    if n > PACKED_MAX_ARITY:
        return np.asarray([int(v) for v in np.atleast_1d(values)], dtype=object)
    return np.asarray(values, dtype=np.uint64)


def rows_from_tables(tables, n: int) -> np.ndarray:
    """Expand tables to a (k, 2^n) boolean matrix of values."""
    size = 1 << n
    if n <= PACKED_MAX_ARITY:
        t = np.asarray(tables, dtype=np.uint64).reshape(-1)
        sh = np.arange(size, dtype=np.uint64)
        return ((t[:, None] >> sh) & np.uint64(1)).astype(bool)
    tabs = [int(v) for v in np.atleast_1d(np.asarray(tables, dtype=object)).reshape(-1)]
    nbytes = size // 8
    buf = b"".join(v.to_bytes(nbytes, "little") for v in tabs)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(len(tabs), nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little").astype(bool)


def tables_from_rows(rows: np.ndarray, n: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=bool)
    if n <= PACKED_MAX_ARITY:
        sh = np.arange(1 << n, dtype=np.uint64)
        return (rows.astype(np.uint64) << sh).sum(axis=1, dtype=np.uint64)
    packed = np.packbits(rows, axis=1, bitorder="little")
    return np.asarray([int.from_bytes(r.tobytes(), "little") for r in packed], dtype=object)


def int_row(table: int, n: int) -> np.ndarray:
    return rows_from_tables(as_tables([table], n), n)[0]


def all_tables(n: int) -> np.ndarray:
    if n > ENUM_MAX_ARITY:
        raise ArityCapError(f"cannot enumerate all functions of arity {n} (max {ENUM_MAX_ARITY})")
    return np.arange(1 << (1 << n), dtype=np.uint64)


@lru_cache(maxsize=None)
def all_rows(n: int) -> np.ndarray:
    r = rows_from_tables(all_tables(n), n)
    r.setflags(write=False)
    return r


def _const(v, n):
    if n > PACKED_MAX_ARITY:
        return v
    return np.uint64(v)


def compose_tables(g_table: int, r: int, inner: Sequence, n: int):
    """Table(s) of g(F1, ..., Fr) where each Fi is a table (or broadcastable
    array of tables) of arity n.  Works on Python ints or uint64 arrays."""
    if all(isinstance(x, int) for x in inner):
        full, zero = full_mask(n), 0
    else:
        full = _const(full_mask(n), n)
        zero = _const(0, n)

    def rec(gt: int, k: int, j: int):
        size = 1 << k
        if gt == 0:
            return zero
        if gt == (1 << size) - 1:
            return full
        if k == 1:
            return inner[j] if gt == 2 else (~inner[j]) & full
        half = size >> 1
        low = gt & ((1 << half) - 1)
        high = gt >> half
        if low == high:
            return rec(low, k - 1, j + 1)
        fj = inner[j]
        return (fj & rec(high, k - 1, j + 1)) | ((~fj) & full & rec(low, k - 1, j + 1))

    if len(inner) != r:
        raise ValueError(f"expected {r} inner functions, got {len(inner)}")
    return rec(g_table, r, 0)


@lru_cache(maxsize=None)
def antipode_index(n: int) -> np.ndarray:
    return np.arange((1 << n) - 1, -1, -1)
