"""Symbolic function classes with vectorized membership.

Every class is a frozen dataclass with ``eval_rows(rows, n)`` that maps a
``(k, 2^n)`` boolean matrix of truth tables to a length-``k`` boolean vector.
Names print in a small expression language that :func:`parse_class` reads
back; see :data:`NAMED` for the vocabulary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

import numpy as np

from . import bitops
from .boolfn import BoolFn

__all__ = [
    "ClassExpr", "All", "Empty", "ConstVal", "ValueAt0", "ValueAt1", "AltExactly", "AltAtMost",
    "Monotone", "SelfDual", "Reflexive", "Smin", "Smaj", "Linear", "Separating", "Range2Class",
    "EssArityAtMost", "VarJoin", "VarMeet", "Union", "Intersect", "Difference", "NegCompose",
    "Dual", "Alias", "ClassNameError", "satisfies", "member_mask", "members", "parse_class",
    "restrict", "union", "intersect", "alt_rows", "NAMED", "CLONE_EXPRS", "R2_TYPES",
    "format_r2", "parse_r2", "class_names",
]

INF = None  # rank value meaning "unbounded"


class ClassNameError(ValueError):
    """Unknown class name or malformed class expression."""


# ---------------------------------------------------------------- row helpers

def _bit_pairs(n: int, j: int):
    """Index arrays (lo, hi) of the tuple pairs differing exactly in bit j."""
    idx = np.arange(1 << n)
    lo = idx[(idx & (1 << j)) == 0]
    return lo, lo | (1 << j)


def alt_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Alternation numbers of a batch of functions (dynamic programming over the cube)."""
    k, size = rows.shape
    best = np.full((2, size, k), -1, dtype=np.int16)
    depth = np.zeros(k, dtype=np.int16)
    for a in range(size):
        e0 = np.full(k, -1, dtype=np.int16)
        e1 = np.full(k, -1, dtype=np.int16)
        for j in range(n):
            bit = 1 << j
            if a & bit:
                np.maximum(e0, best[0, a ^ bit], out=e0)
                np.maximum(e1, best[1, a ^ bit], out=e1)
        v = rows[:, a]
        if a == 0:
            d = np.zeros(k, dtype=np.int16)
        else:
            same = np.where(v, e1, e0)
            other = np.where(v, e0, e1)
            d = np.maximum(same, np.where(other >= 0, other + 1, -1)).astype(np.int16)
        best[0, a] = np.where(v, e0, np.maximum(e0, d))
        best[1, a] = np.where(v, np.maximum(e1, d), e1)
        depth = d
    return depth.astype(np.int64)


def _reverse(rows: np.ndarray) -> np.ndarray:
    return rows[:, ::-1]


def _dual_rows(rows: np.ndarray) -> np.ndarray:
    return ~rows[:, ::-1]


def _superset_any(z: np.ndarray, n: int) -> np.ndarray:
    """u[:, s] = any z[:, t] over t containing s."""
    u = z.copy()
    for j in range(n):
        lo, hi = _bit_pairs(n, j)
        u[:, lo] |= u[:, hi]
    return u


def _zero_separating(rows: np.ndarray, n: int, m: int | None) -> np.ndarray:
    z = ~rows
    size = 1 << n
    full = size - 1
    if m is None or m >= n:
        # f^-1(0) lies in some hyperplane x_i = 0
        ok = np.zeros(rows.shape[0], dtype=bool)
        for j in range(n):
            idx = np.arange(size)
            ones = idx[(idx & (1 << j)) != 0]
            ok |= ~z[:, ones].any(axis=1)
        return ok
    u = _superset_any(z, n)
    bad = np.zeros(rows.shape[0], dtype=bool)
    # a bad set of size <= m: (m-1) zeros whose join misses a superset-hit
    for combo in product(range(size), repeat=m - 1):
        acc = np.ones(rows.shape[0], dtype=bool)
        r = 0
        for p in combo:
            acc &= z[:, p]
            r |= p
        bad |= acc & u[:, full & ~r]
    return ~bad


# ------------------------------------------------------------- pair types

R2_TYPES = ("0", "1", "01")


def format_r2(r: Iterable[str]) -> str:
    return ",".join(t for t in R2_TYPES if t in set(r))


def parse_r2(text: str) -> frozenset:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts or any(p not in R2_TYPES for p in parts):
        raise ClassNameError(f"bad pair-type set {text!r}")
    return frozenset(parts)


# ------------------------------------------------------------------ base class

class ClassExpr:
    """Base class of all class descriptors."""

    def eval_rows(self, rows: np.ndarray, n: int) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    @property
    def name(self) -> str:  # pragma: no cover
        raise NotImplementedError

    prec = 3  # 1: union/difference, 2: intersection, 3: atomic

    def __or__(self, other: "ClassExpr") -> "ClassExpr":
        return union(self, other)

    def __and__(self, other: "ClassExpr") -> "ClassExpr":
        return intersect(self, other)

    def __sub__(self, other: "ClassExpr") -> "ClassExpr":
        return Difference(self, other)

    def contains(self, f: BoolFn) -> bool:
        return satisfies(f, self)

    def __str__(self) -> str:
        return self.name


def _wrap(e: ClassExpr, level: int) -> str:
    return f"({e.name})" if e.prec < level else e.name


# ------------------------------------------------------------------------ atoms

@dataclass(frozen=True)
class All(ClassExpr):
    def eval_rows(self, rows, n):
        return np.ones(rows.shape[0], dtype=bool)

    @property
    def name(self):
        return "All"


@dataclass(frozen=True)
class Empty(ClassExpr):
    def eval_rows(self, rows, n):
        return np.zeros(rows.shape[0], dtype=bool)

    @property
    def name(self):
        return "Empty"


@dataclass(frozen=True)
class ConstVal(ClassExpr):
    """Constant functions; ``value`` None means either constant."""

    value: int | None = None

    def eval_rows(self, rows, n):
        if self.value is None:
            return rows.all(axis=1) | ~rows.any(axis=1)
        return rows.all(axis=1) if self.value else ~rows.any(axis=1)

    @property
    def name(self):
        return "C" if self.value is None else f"C{self.value}"


@dataclass(frozen=True)
class ValueAt0(ClassExpr):
    value: int

    def eval_rows(self, rows, n):
        return rows[:, 0] == bool(self.value)

    @property
    def name(self):
        return f"{'OI'[self.value]}X"


@dataclass(frozen=True)
class ValueAt1(ClassExpr):
    value: int

    def eval_rows(self, rows, n):
        return rows[:, -1] == bool(self.value)

    @property
    def name(self):
        return f"X{'OI'[self.value]}"


@dataclass(frozen=True)
class AltExactly(ClassExpr):
    k: int

    def eval_rows(self, rows, n):
        return alt_rows(rows, n) == self.k

    @property
    def name(self):
        return f"A{self.k}"


@dataclass(frozen=True)
class AltAtMost(ClassExpr):
    k: int

    def eval_rows(self, rows, n):
        return alt_rows(rows, n) <= self.k

    @property
    def name(self):
        return f"A<={self.k}"


@dataclass(frozen=True)
class Monotone(ClassExpr):
    def eval_rows(self, rows, n):
        ok = np.ones(rows.shape[0], dtype=bool)
        for j in range(n):
            lo, hi = _bit_pairs(n, j)
            ok &= ~(rows[:, lo] & ~rows[:, hi]).any(axis=1)
        return ok

    @property
    def name(self):
        return "M"


@dataclass(frozen=True)
class SelfDual(ClassExpr):
    def eval_rows(self, rows, n):
        return (rows != _reverse(rows)).all(axis=1)

    @property
    def name(self):
        return "S"


@dataclass(frozen=True)
class Reflexive(ClassExpr):
    def eval_rows(self, rows, n):
        return (rows == _reverse(rows)).all(axis=1)

    @property
    def name(self):
        return "Refl"


@dataclass(frozen=True)
class Smin(ClassExpr):
    """Minorants of self-dual functions: never 1 on both a and its complement."""

    def eval_rows(self, rows, n):
        return ~(rows & _reverse(rows)).any(axis=1)

    @property
    def name(self):
        return "Smin"


@dataclass(frozen=True)
class Smaj(ClassExpr):
    """Majorants of self-dual functions: 1 on a or on its complement."""

    def eval_rows(self, rows, n):
        return (rows | _reverse(rows)).all(axis=1)

    @property
    def name(self):
        return "Smaj"


@dataclass(frozen=True)
class Linear(ClassExpr):
    def eval_rows(self, rows, n):
        r = rows.copy()
        for j in range(n):
            lo, hi = _bit_pairs(n, j)
            r[:, hi] ^= r[:, lo]
        w = bitops.weights(n)
        return ~r[:, w >= 2].any(axis=1)

    @property
    def name(self):
        return "L"


@dataclass(frozen=True)
class Separating(ClassExpr):
    """a-separating functions of rank m (m None: unbounded rank)."""

    a: int
    m: int | None = None

    def eval_rows(self, rows, n):
        if self.a == 1:
            rows = _dual_rows(rows)
        return _zero_separating(rows, n, self.m)

    @property
    def name(self):
        return f"{'WU'[self.a]}{'inf' if self.m is None else self.m}"


@dataclass(frozen=True)
class Range2Class(ClassExpr):
    """F^R_ab: pair-type set exactly R, with optional values a = f(0), b = f(1)."""

    r: frozenset
    a: int | None = None
    b: int | None = None

    def eval_rows(self, rows, n):
        half = rows.shape[1] // 2
        u = rows[:, :half]
        v = rows[:, ::-1][:, :half]
        present = {
            "0": (~u & ~v).any(axis=1),
            "1": (u & v).any(axis=1),
            "01": (u ^ v).any(axis=1),
        }
        ok = np.ones(rows.shape[0], dtype=bool)
        for t in R2_TYPES:
            ok &= present[t] == (t in self.r)
        if self.a is not None:
            ok &= rows[:, 0] == bool(self.a)
        if self.b is not None:
            ok &= rows[:, -1] == bool(self.b)
        return ok

    @property
    def name(self):
        base = f"F^{{{format_r2(self.r)}}}"
        if self.a is None and self.b is None:
            return base
        return f"{base}_{{{'x' if self.a is None else self.a}{'x' if self.b is None else self.b}}}"


@dataclass(frozen=True)
class EssArityAtMost(ClassExpr):
    k: int

    def eval_rows(self, rows, n):
        count = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(n):
            lo, hi = _bit_pairs(n, j)
            count += (rows[:, lo] != rows[:, hi]).any(axis=1)
        return count <= self.k

    @property
    def name(self):
        return f"Ess<={self.k}"


def _join_of_singletons(rows: np.ndarray, n: int) -> np.ndarray:
    size = 1 << n
    pred = np.repeat(rows[:, :1], size, axis=1)
    idx = np.arange(size)
    for j in range(n):
        bit = 1 << j
        pred[:, (idx & bit) != 0] |= rows[:, bit:bit + 1]
    return pred


@dataclass(frozen=True)
class VarJoin(ClassExpr):
    """Polynomial operations of the join semilattice: c or a join of variables."""

    def eval_rows(self, rows, n):
        return (rows == _join_of_singletons(rows, n)).all(axis=1)

    @property
    def name(self):
        return "V"


@dataclass(frozen=True)
class VarMeet(ClassExpr):
    """Polynomial operations of the meet semilattice (dual of VarJoin)."""

    def eval_rows(self, rows, n):
        d = _dual_rows(rows)
        return (d == _join_of_singletons(d, n)).all(axis=1)

    @property
    def name(self):
        return "Lam"


# ------------------------------------------------------------------ combinators

@dataclass(frozen=True)
class Union(ClassExpr):
    items: tuple

    prec = 1

    def eval_rows(self, rows, n):
        out = np.zeros(rows.shape[0], dtype=bool)
        for e in self.items:
            out |= e.eval_rows(rows, n)
        return out

    @property
    def name(self):
        return " | ".join(_wrap(e, 2) for e in self.items)


@dataclass(frozen=True)
class Intersect(ClassExpr):
    items: tuple

    prec = 2

    def eval_rows(self, rows, n):
        out = np.ones(rows.shape[0], dtype=bool)
        for e in self.items:
            out &= e.eval_rows(rows, n)
        return out

    @property
    def name(self):
        return " & ".join(_wrap(e, 3) for e in self.items)


@dataclass(frozen=True)
class Difference(ClassExpr):
    left: ClassExpr
    right: ClassExpr

    prec = 1

    def eval_rows(self, rows, n):
        return self.left.eval_rows(rows, n) & ~self.right.eval_rows(rows, n)

    @property
    def name(self):
        return f"{_wrap(self.left, 1)} - {_wrap(self.right, 2)}"


@dataclass(frozen=True)
class NegCompose(ClassExpr):
    """bar(K) = {not f : f in K}."""

    inner: ClassExpr

    def eval_rows(self, rows, n):
        return self.inner.eval_rows(~rows, n)

    @property
    def name(self):
        return f"bar({self.inner.name})"


@dataclass(frozen=True)
class Dual(ClassExpr):
    inner: ClassExpr

    def eval_rows(self, rows, n):
        return self.inner.eval_rows(_dual_rows(rows), n)

    @property
    def name(self):
        return f"dual({self.inner.name})"


@dataclass(frozen=True)
class Alias(ClassExpr):
    """A named class: prints as ``label`` and evaluates ``expr``."""

    label: str
    expr: ClassExpr

    def eval_rows(self, rows, n):
        return self.expr.eval_rows(rows, n)

    @property
    def name(self):
        return self.label


def union(*items: ClassExpr) -> ClassExpr:
    flat: list = []
    for e in items:
        flat.extend(e.items if isinstance(e, Union) else (e,))
    if not flat:
        return Empty()
    return flat[0] if len(flat) == 1 else Union(tuple(flat))


def intersect(*items: ClassExpr) -> ClassExpr:
    flat: list = []
    for e in items:
        flat.extend(e.items if isinstance(e, Intersect) else (e,))
    if not flat:
        return All()
    return flat[0] if len(flat) == 1 else Intersect(tuple(flat))


def restrict(e: ClassExpr, a: int | None, b: int | None) -> ClassExpr:
    """K_ab: members of e with f(0) = a and f(1) = b (None: unconstrained)."""
    parts = [e]
    if a is not None:
        parts.append(ValueAt0(a))
    if b is not None:
        parts.append(ValueAt1(b))
    label = f"{_wrap(e, 3)}_{'x' if a is None else a}{'x' if b is None else b}"
    return Alias(label, intersect(*parts))


# ------------------------------------------------------------------ evaluation

def satisfies(f: BoolFn, e: ClassExpr) -> bool:
    rows = bitops.rows_from_tables(bitops.as_tables([f.table], f.arity), f.arity)
    return bool(e.eval_rows(rows, f.arity)[0])


@lru_cache(maxsize=4096)
def member_mask(e: ClassExpr, n: int) -> np.ndarray:
    """Boolean mask over all n-ary tables (index = table) of members of e."""
    m = e.eval_rows(bitops.all_rows(n), n)
    m.setflags(write=False)
    return m


def members(e: ClassExpr, n: int) -> list[BoolFn]:
    return [BoolFn(n, int(t)) for t in np.flatnonzero(member_mask(e, n))]


# ---------------------------------------------------------------- named classes

def _vals(a: int | None, b: int | None) -> ClassExpr:
    parts = []
    if a is not None:
        parts.append(ValueAt0(a))
    if b is not None:
        parts.append(ValueAt1(b))
    return intersect(*parts)


NAMED: dict[str, ClassExpr] = {}


def _name(label: str, expr: ClassExpr) -> ClassExpr:
    a = Alias(label, expr)
    NAMED[label] = a
    return a


ALL = _name("All", All())
EMPTY = _name("Empty", Empty())
C = _name("C", ConstVal(None))
C0 = _name("C0", ConstVal(0))
C1 = _name("C1", ConstVal(1))
for _a, _b in product((0, 1, None), repeat=2):
    if _a is None and _b is None:
        continue
    _label = ("OI"[_a] if _a is not None else "X") + ("OI"[_b] if _b is not None else "X")
    _name(_label, _vals(_a, _b))
OO, OI, IO, II = NAMED["OO"], NAMED["OI"], NAMED["IO"], NAMED["II"]
OX, IX, XO, XI = NAMED["OX"], NAMED["IX"], NAMED["XO"], NAMED["XI"]
_name("Eq", union(OO, II))
_name("Neq", union(OI, IO))
_name("Eiio", union(OO, OI, II))
_name("Eioi", union(OO, IO, II))
_name("Eiii", union(OO, OI, IO))
_name("Eioo", union(OI, IO, II))
for _label, _left, _right in [
    ("OXCI", OX, C1), ("XOCI", XO, C1), ("IXCO", IX, C0), ("XICO", XI, C0),
    ("OIC", OI, C), ("IOC", IO, C), ("OICO", OI, C0), ("IOCO", IO, C0),
    ("OICI", OI, C1), ("IOCI", IO, C1), ("OOCI", OO, C1), ("IICO", II, C0),
]:
    _name(_label, union(_left, _right))
SMIN = _name("Smin", Smin())
SMAJ = _name("Smaj", Smaj())
REFL = _name("Refl", Reflexive())


# ------------------------------------------------------------- clone membership

CLONE_EXPRS: dict[str, ClassExpr] = {}


def _clone(label: str, expr: ClassExpr) -> ClassExpr:
    a = _name(label, expr)
    CLONE_EXPRS[label] = a
    return a


_EA1 = EssArityAtMost(1)
_MON = Monotone()
_SD = SelfDual()
_LIN = Linear()
_V = VarJoin()
_LAM = VarMeet()

_clone("Omega", All())
_clone("Tc", _vals(0, 1))
_clone("T0", _vals(0, None))
_clone("T1", _vals(None, 1))
_clone("M", _MON)
_clone("M0", intersect(_MON, _vals(0, None)))
_clone("M1", intersect(_MON, _vals(None, 1)))
_clone("Mc", intersect(_MON, _vals(0, 1)))
_clone("S", _SD)
_clone("Sc", intersect(_SD, _vals(0, 1)))
_clone("SM", intersect(_SD, _MON))
_clone("L", _LIN)
_clone("L0", intersect(_LIN, _vals(0, None)))
_clone("L1", intersect(_LIN, _vals(None, 1)))
_clone("Lc", intersect(_LIN, _vals(0, 1)))
_clone("LS", intersect(_LIN, _SD))
_clone("V", _V)
_clone("V0", intersect(_V, _vals(0, None)))
_clone("V1", intersect(_V, _vals(None, 1)))
_clone("Vc", intersect(_V, _vals(0, 1)))
_clone("Lam", _LAM)
_clone("Lam0", intersect(_LAM, _vals(0, None)))
_clone("Lam1", intersect(_LAM, _vals(None, 1)))
_clone("Lamc", intersect(_LAM, _vals(0, 1)))
_clone("Omega1", _EA1)
_clone("Istar", intersect(_EA1, NAMED["Neq"].expr))
_clone("I", intersect(_EA1, _MON))
_clone("I0", intersect(_EA1, _MON, _vals(0, None)))
_clone("I1", intersect(_EA1, _MON, _vals(None, 1)))
_clone("Ic", intersect(_EA1, _MON, _vals(0, 1)))
for _a, _letter in ((0, "W"), (1, "U")):
    for _m in (2, 3, None):
        _suffix = "inf" if _m is None else str(_m)
        _sep = Separating(_a, _m)
        _clone(f"{_letter}{_suffix}", _sep)
        _clone(f"M{_letter}{_suffix}", intersect(_sep, _MON))
        _clone(f"Tc{_letter}{_suffix}", intersect(_sep, _vals(0, 1)))
        _clone(f"Mc{_letter}{_suffix}", intersect(_sep, _MON, _vals(0, 1)))

for _base in ("M", "M0", "M1", "Mc"):
    _name(f"{_base}neg", NegCompose(NAMED[_base]))


def class_names() -> list[str]:
    return sorted(NAMED)


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<op>[|&()\-])|(?P<fn>bar|dual)\s*\("
    r"|(?P<name>F\^\{[^}]*\}(?:_(?:[01x]{2}|\{[01x]{2}\}))?|A<=\d+(?:_[01x]{2})?"
    r"|[A-Za-z][A-Za-z0-9]*(?:_[01x]{2})?))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ClassNameError(f"cannot parse class expression at {text[pos:]!r}")
        if m.group("op"):
            out.append(("op", m.group("op")))
        elif m.group("fn"):
            out.append(("fn", m.group("fn")))
        else:
            out.append(("name", m.group("name")))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _bit_or_none(ch: str) -> int | None:
    return None if ch == "x" else int(ch)


def _atom(token: str) -> ClassExpr:
    if token in NAMED:
        return NAMED[token]
    base, suffix = token, None
    m = re.fullmatch(r"(.*)_\{?([01x]{2})\}?", token)
    if m:
        base, suffix = m.group(1), m.group(2)
    if base in NAMED:
        inner = NAMED[base]
    elif re.fullmatch(r"A\d+", base):
        inner = AltExactly(int(base[1:]))
    elif re.fullmatch(r"A<=\d+", base):
        inner = AltAtMost(int(base[3:]))
    elif base.startswith("F^{") and base.endswith("}"):
        r = parse_r2(base[3:-1])
        if suffix is None:
            return Range2Class(r)
        return Range2Class(r, _bit_or_none(suffix[0]), _bit_or_none(suffix[1]))
    else:
        raise ClassNameError(f"unknown class name {token!r}; known names: {', '.join(class_names())}")
    if suffix is None:
        return inner
    return restrict(inner, _bit_or_none(suffix[0]), _bit_or_none(suffix[1]))


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ClassNameError(f"expected {value!r}, got {v!r}")

    def expr(self):
        left = self.term()
        while self.peek() in (("op", "|"), ("op", "-")):
            _, op = self.take()
            right = self.term()
            left = union(left, right) if op == "|" else Difference(left, right)
        return left

    def term(self):
        left = self.factor()
        while self.peek() == ("op", "&"):
            self.take()
            left = intersect(left, self.factor())
        return left

    def factor(self):
        kind, v = self.take()
        if kind == "op" and v == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "fn":
            e = self.expr()
            self.expect(")")
            return NegCompose(e) if v == "bar" else Dual(e)
        if kind == "name":
            return _atom(v)
        raise ClassNameError(f"unexpected token {v!r}")


def parse_class(text: str) -> ClassExpr:
    p = _Parser(_tokenize(text))
    e = p.expr()
    if p.i != len(p.toks):
        raise ClassNameError(f"trailing input in {text!r}")
    return e
