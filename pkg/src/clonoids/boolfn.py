"""Boolean functions as (arity, truth table) pairs and the operators on them."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from . import bitops
from .bitops import compose_tables, full_mask, projection_table

__all__ = [
    "BoolFn", "ArgMap", "InputShapeError",
    "eval_fn", "minor", "compose", "star", "dual", "negate", "essential_arity",
    "alternation", "lambda_fn", "range2_signature", "projection", "constant",
    "threshold", "parse_fn",
    "NOT", "AND", "OR", "XOR", "IMPLIES", "IFF", "MAJ", "XOR3", "OR_AND", "AND_OR", "DISC", "ID",
]


class InputShapeError(ValueError):
    """An argument tuple or function list has the wrong shape."""


_HEX_RE = re.compile(r"^\s*(\d+)\s*:\s*([0-9a-fA-F]+)\s*$")


@dataclass(frozen=True, order=True)
class BoolFn:
    """An n-ary Boolean function, n >= 1.

    ``table`` bit i is the value on the tuple whose big-endian binary
    expansion is i, so ``x1`` is the most significant coordinate.
    """

    arity: int
    table: int

    def __post_init__(self):
        if self.arity < 1:
            raise InputShapeError("arity must be at least 1")
        if not 0 <= self.table <= full_mask(self.arity):
            raise InputShapeError(f"table does not fit arity {self.arity}")

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "BoolFn":
        size = len(values)
        n = size.bit_length() - 1
        if size < 2 or 1 << n != size:
            raise InputShapeError("number of values must be a power of two >= 2")
        t = 0
        for i, v in enumerate(values):
            if v not in (0, 1, True, False):
                raise InputShapeError("values must be bits")
            if v:
                t |= 1 << i
        return cls(n, t)

    @classmethod
    def from_hex(cls, text: str) -> "BoolFn":
        m = _HEX_RE.match(text)
        if not m:
            raise InputShapeError(f"expected 'n:HEX', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2), 16))

    @classmethod
    def from_function(cls, n: int, fn) -> "BoolFn":
        return cls.from_values([int(bool(fn(*a))) for a in product((0, 1), repeat=n)])

    def to_hex(self) -> str:
        return f"{self.arity}:{self.table:X}"

    def values(self) -> tuple[int, ...]:
        return tuple((self.table >> i) & 1 for i in range(1 << self.arity))

    def __call__(self, *args: int) -> int:
        return eval_fn(self, args)

    @property
    def at_zero(self) -> int:
        return self.table & 1

    @property
    def at_one(self) -> int:
        return (self.table >> ((1 << self.arity) - 1)) & 1

    @cached_property
    def alt(self) -> int:
        return alternation(self)[0]

    def __str__(self) -> str:
        return self.to_hex()


@dataclass(frozen=True)
class ArgMap:
    """sigma: [1, source] -> [1, target], stored as the tuple of images."""

    images: tuple[int, ...]
    target: int

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if not self.images:
            raise InputShapeError("an argument map needs at least one argument")
        if self.target < 1 or any(not 1 <= s <= self.target for s in self.images):
            raise InputShapeError("argument map image out of range")

    @property
    def source(self) -> int:
        return len(self.images)

    def then(self, other: "ArgMap") -> "ArgMap":
        """The map i -> other(self(i)), matching minor(minor(g, self), other)."""
        if other.source != self.target:
            raise InputShapeError("argument maps are not composable")
        return ArgMap(tuple(other.images[s - 1] for s in self.images), other.target)


def eval_fn(f: BoolFn, bits: Sequence[int]) -> int:
    if len(bits) != f.arity:
        raise InputShapeError(f"expected {f.arity} arguments, got {len(bits)}")
    idx = 0
    for b in bits:
        idx = (idx << 1) | (1 if b else 0)
    return (f.table >> idx) & 1


def projection(i: int, n: int) -> BoolFn:
    """pr_i^(n) with 1-based i."""
    if not 1 <= i <= n:
        raise InputShapeError("projection index out of range")
    return BoolFn(n, projection_table(i - 1, n))


def constant(a: int, n: int = 1) -> BoolFn:
    return BoolFn(n, full_mask(n) if a else 0)


def compose(f: BoolFn, gs: Sequence[BoolFn]) -> BoolFn:
    if len(gs) != f.arity:
        raise InputShapeError(f"{f.arity}-ary function needs {f.arity} inner functions")
    m = gs[0].arity
    if any(g.arity != m for g in gs):
        raise InputShapeError("inner functions must share one arity")
    return BoolFn(m, int(compose_tables(f.table, f.arity, [g.table for g in gs], m)))


def minor(g: BoolFn, sigma: ArgMap) -> BoolFn:
    if sigma.source != g.arity:
        raise InputShapeError("argument map source must equal the arity")
    m = sigma.target
    return BoolFn(m, int(compose_tables(g.table, g.arity,
                                        [projection_table(s - 1, m) for s in sigma.images], m)))


def star(f: BoolFn, g: BoolFn) -> BoolFn:
    """(f * g)(a1..a_{m+n-1}) = f(g(a1..an), a_{n+1}, ..., a_{n+m-1})."""
    n, m = g.arity, f.arity
    k = m + n - 1
    lifted = minor(g, ArgMap(tuple(range(1, n + 1)), k)).table
    rest = [projection_table(j, k) for j in range(n, k)]
    return BoolFn(k, int(compose_tables(f.table, m, [lifted] + rest, k)))


def negate(f: BoolFn) -> BoolFn:
    return BoolFn(f.arity, f.table ^ full_mask(f.arity))


def _reverse_bits(t: int, size: int) -> int:
    return int(format(t, f"0{size}b")[::-1], 2)


def dual(f: BoolFn) -> BoolFn:
    # f^d(a) = not f(not a); not-a has index size-1-i, i.e. the bit order reversed
    size = 1 << f.arity
    return BoolFn(f.arity, _reverse_bits(f.table, size) ^ full_mask(f.arity))


def essential_arity(f: BoolFn) -> int:
    count = 0
    for i in range(f.arity):
        p = projection_table(i, f.arity)
        shift = 1 << (f.arity - 1 - i)
        hi = f.table & p
        lo = f.table & ~p & full_mask(f.arity)
        if (hi >> shift) != lo:
            count += 1
    return count


def alternation(f: BoolFn) -> tuple[int, tuple[int, ...]]:
    """(Alt(f), d_f) where d_f[i] is the longest alternating chain in [0, a_i]."""
    n = f.arity
    size = 1 << n
    vals = f.values()
    neg = -1
    depth = [0] * size
    best = [[neg, neg] for _ in range(size)]  # best[a][c]: max depth at y <= a with f(y)=c
    for a in range(size):
        e = [neg, neg]
        for j in range(n):
            bit = 1 << j
            if a & bit:
                b = best[a ^ bit]
                e[0] = max(e[0], b[0])
                e[1] = max(e[1], b[1])
        v = vals[a]
        if a == 0:
            d = 0
        else:
            same, other = e[v], e[1 - v]
            d = max(same, other + 1 if other >= 0 else neg)
        depth[a] = d
        e[v] = max(e[v], d)
        best[a] = e
    return depth[size - 1], tuple(depth)


def lambda_fn(c: Iterable[int] | str) -> BoolFn:
    """lambda_c: the function whose value on a is c[w(a)], w = Hamming weight."""
    bits = [int(ch) for ch in c] if isinstance(c, str) else [int(x) for x in c]
    if not bits:
        raise InputShapeError("empty label vector")
    if any(b not in (0, 1) for b in bits):
        raise InputShapeError("label vector must be binary")
    m = len(bits) - 1
    if m == 0:
        return constant(bits[0], 1)
    w = bitops.weights(m)
    t = 0
    for i in range(1 << m):
        if bits[w[i]]:
            t |= 1 << i
    return BoolFn(m, t)


def range2_signature(f: BoolFn) -> tuple[frozenset, int, int]:
    """(R, f(0), f(1)) with R the set of pair types {f(a), f(~a)}.

    Pair types are encoded as the strings "0", "1" and "01".
    """
    size = 1 << f.arity
    t = f.table
    seen = set()
    for i in range(size // 2):
        u, v = (t >> i) & 1, (t >> (size - 1 - i)) & 1
        seen.add("01" if u != v else str(u))
    return frozenset(seen), f.at_zero, f.at_one


def threshold(k: int, n: int) -> BoolFn:
    """th_k^n: 1 iff at least k of the n arguments are 1."""
    return BoolFn.from_function(n, lambda *a: sum(a) >= k)


def parse_fn(text: str) -> BoolFn:
    """Accept either the 'n:HEX' format or a lambda bit-vector like 'L0101'."""
    text = text.strip()
    if text.upper().startswith("L") and set(text[1:]) <= {"0", "1"} and len(text) > 1:
        return lambda_fn(text[1:])
    return BoolFn.from_hex(text)


ID = projection(1, 1)
NOT = BoolFn.from_values([1, 0])
AND = BoolFn.from_values([0, 0, 0, 1])
OR = BoolFn.from_values([0, 1, 1, 1])
XOR = BoolFn.from_values([0, 1, 1, 0])
IMPLIES = BoolFn.from_values([1, 1, 0, 1])
IFF = BoolFn.from_values([1, 0, 0, 1])
MAJ = BoolFn.from_values([0, 0, 0, 1, 0, 1, 1, 1])
XOR3 = BoolFn.from_values([0, 1, 1, 0, 1, 0, 0, 1])
OR_AND = BoolFn.from_values([0, 0, 0, 1, 1, 1, 1, 1])  # x1 or (x2 and x3)
AND_OR = dual(OR_AND)  # x1 and (x2 or x3)
DISC = BoolFn.from_function(3, lambda x, y, z: z if x == y else x)
