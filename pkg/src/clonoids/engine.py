"""Clonoid closure, stability checks, enumeration and largest stabilizing clones."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Union

import numpy as np

from . import bitops
from .boolfn import BoolFn, lambda_fn
from .classes import (
    CLONE_EXPRS, NAMED, ClassExpr, Dual, Empty, member_mask, parse_class, union,
)
from .fnset import FnSet, class_compose, default_cap, image_search, left_closure_tables
from .golden import load_suite
from .minorder import (
    CLASSIFIED_SOURCES, M_FAMILY, downset_expr, minor_downsets, minor_images,
)
from .postlattice import (
    CLONE_NAMES, clone_leq, clones_above, dual_clone, get_clone, lower_covers, member_tables,
)

__all__ = [
    "Witness", "StabilityReport", "ClonoidDescriptor", "NotCoveredError", "AmbiguityError",
    "check_right_stable", "check_left_stable", "clonoid_closure", "enumerate_clonoids",
    "covered_pairs", "largest_stabilizing", "constant_adjunction_check", "AdjunctionReport",
    "class_compose", "expr_to_json", "minor_closed", "LAMBDA_MAX_ARITY",
]

Target = Union[ClassExpr, FnSet]
LAMBDA_MAX_ARITY = 5
STAR_MAX_ARITY = bitops.PACKED_MAX_ARITY
_MASK_ARITY = 3  # above this, evaluate only the tables asked about


class NotCoveredError(LookupError):
    """No classification is available for the requested clone pair."""

    def __init__(self, pair, nearest):
        self.pair = pair
        self.nearest = nearest
        hint = f"; nearest covered pair below it: ({nearest[0]}, {nearest[1]})" if nearest else ""
        super().__init__(f"({pair[0]}, {pair[1]}) is not covered{hint}")


class AmbiguityError(RuntimeError):
    """Stability at the arity cap does not single out one largest clone."""


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class Witness:
    """A composition that leaves the class: kind is "minor", "star" or "compose"."""

    kind: str
    outer: BoolFn
    inner: tuple
    result: BoolFn

    def __str__(self) -> str:
        if self.kind == "star":
            return f"{self.outer} * {self.inner[0]} = {self.result}"
        if self.kind == "minor":
            return f"{self.outer} minor via x -> ({','.join(map(str, self.inner))}) = {self.result}"
        return f"{self.outer}({', '.join(map(str, self.inner))}) = {self.result}"


@dataclass(frozen=True)
class StabilityReport:
    ok: bool
    direction: str
    clone: str
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, label: str) -> str:
        tail = f" {self.witness}" if self.witness else ""
        return f"{label} {self.clone} {self.direction}{tail}"

    def line(self, label: str) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.describe(label)}"


# -------------------------------------------------------------- membership

def _is_expr(k: Target) -> bool:
    return isinstance(k, ClassExpr)


def _member_tables(k: Target, n: int) -> np.ndarray:
    if _is_expr(k):
        return np.flatnonzero(member_mask(k, n)).astype(np.uint64)
    return k.tables(n) if n <= k.cap else np.zeros(0, dtype=np.uint64)


def _contains(k: Target, tables: np.ndarray, n: int) -> np.ndarray | None:
    """Membership of n-ary tables in k; None when k cannot decide at this arity."""
    tables = np.asarray(tables, dtype=np.uint64)
    if _is_expr(k):
        if n <= _MASK_ARITY:
            return member_mask(k, n)[tables.astype(np.int64)]
        return k.eval_rows(bitops.rows_from_tables(tables, n), n)
    if n > k.cap:
        return None
    return k.mask(n)[tables.astype(np.int64)]


@lru_cache(maxsize=None)
def _lambda_tables(n: int) -> np.ndarray:
    return np.array([lambda_fn(bits).table for bits in product((0, 1), repeat=n + 1)],
                    dtype=np.uint64)


def _lambda_members(k: Target, n: int) -> np.ndarray:
    ts = _lambda_tables(n)
    inside = _contains(k, ts, n)
    return ts[inside] if inside is not None else np.zeros(0, dtype=np.uint64)


def _exhaustive_cap(k: Target, cap: int | None) -> int:
    cap = default_cap() if cap is None else cap
    if not _is_expr(k):
        cap = min(cap, k.cap)
    return max(1, min(cap, bitops.ENUM_MAX_ARITY))


# ---------------------------------------------------------------- right side

def _minor_index(sigma: tuple, m: int, n: int) -> np.ndarray:
    """Column map for the minor f(x_sigma(1), ..., x_sigma(m)) at arity n."""
    idx = np.zeros(1 << n, dtype=np.int64)
    for x in range(1 << n):
        y = 0
        for i, j in enumerate(sigma):
            y |= ((x >> (n - 1 - j)) & 1) << (m - 1 - i)
        idx[x] = y
    return idx


def _star_index(g: BoolFn, m: int) -> np.ndarray:
    """Column map for f * g = f(g(x_1..x_r), x_(r+1), ..., x_(r+m-1))."""
    r = g.arity
    n = m + r - 1
    gv = g.values()
    idx = np.zeros(1 << n, dtype=np.int64)
    low = m - 1
    for x in range(1 << n):
        idx[x] = (gv[x >> low] << low) | (x & ((1 << low) - 1))
    return idx


def _first_bad(k: Target, rows: np.ndarray, n: int):
    tables = bitops.tables_from_rows(rows, n)
    inside = _contains(k, tables, n)
    if inside is None:
        return None
    bad = np.flatnonzero(~inside)
    return (int(bad[0]), int(tables[bad[0]])) if len(bad) else None


def _minor_violation(k: Target, f_tables: np.ndarray, m: int, cap: int):
    rows = bitops.rows_from_tables(f_tables, m)
    for n in range(1, cap + 1):
        for sigma in product(range(n), repeat=m):
            hit = _first_bad(k, rows[:, _minor_index(sigma, m, n)], n)
            if hit:
                i, t = hit
                return Witness("minor", BoolFn(m, int(f_tables[i])), tuple(j + 1 for j in sigma),
                               BoolFn(n, t))
    return None


def _star_violation(k: Target, f_tables: np.ndarray, m: int, gens) -> Witness | None:
    rows = bitops.rows_from_tables(f_tables, m)
    for g in gens:
        n = m + g.arity - 1
        if n > STAR_MAX_ARITY:
            continue
        hit = _first_bad(k, rows[:, _star_index(g, m)], n)
        if hit:
            i, t = hit
            return Witness("star", BoolFn(m, int(f_tables[i])), (g,), BoolFn(n, t))
    return None


def minor_closed(k: Target, cap: int | None = None) -> StabilityReport:
    cap = _exhaustive_cap(k, cap)
    for m in range(1, cap + 1):
        ts = _member_tables(k, m)
        if len(ts):
            w = _minor_violation(k, ts, m, cap)
            if w:
                return StabilityReport(False, "right", "Ic", w)
    return StabilityReport(True, "right", "Ic")


def check_right_stable(k: Target, c, cap: int | None = None) -> StabilityReport:
    """K C within K: minor-closed and f * g in K for generators g of C.

    Members up to the cap are tested exhaustively, then symmetric (lambda) members of
    larger arity; compositions are tested by predicate at any arity K can decide.
    """
    clone = get_clone(c)
    cap = _exhaustive_cap(k, cap)
    gens = clone.generators
    for m in range(1, cap + 1):
        ts = _member_tables(k, m)
        if not len(ts):
            continue
        w = _minor_violation(k, ts, m, cap) or _star_violation(k, ts, m, gens)
        if w:
            return StabilityReport(False, "right", clone.name, w)
    if _is_expr(k):
        for m in range(cap + 1, LAMBDA_MAX_ARITY):
            ts = _lambda_members(k, m)
            w = _star_violation(k, ts, m, gens) if len(ts) else None
            if w:
                return StabilityReport(False, "right", clone.name, w)
    return StabilityReport(True, "right", clone.name)


# ----------------------------------------------------------------- left side

def _left_violation(k: Target, choices: np.ndarray, n: int, gens) -> Witness | None:
    if not len(choices):
        return None

    def accept(tables):
        inside = _contains(k, tables, n)
        return np.ones(len(tables), dtype=bool) if inside is None else inside

    for g in gens:
        _, hit = image_search(g, choices, n, accept)
        if hit:
            tup, t = hit
            return Witness("compose", g, tuple(BoolFn(n, x) for x in tup), BoolFn(n, t))
    return None


def check_left_stable(k: Target, c, cap: int | None = None) -> StabilityReport:
    """C K within K: g(f1..fr) in K for generators g of C and same-arity members fi."""
    clone = get_clone(c)
    cap = _exhaustive_cap(k, cap)
    gens = clone.generators
    for n in range(1, cap + 1):
        w = _left_violation(k, _member_tables(k, n), n, gens)
        if w:
            return StabilityReport(False, "left", clone.name, w)
    if _is_expr(k):
        for n in range(cap + 1, LAMBDA_MAX_ARITY + 1):
            w = _left_violation(k, _lambda_members(k, n), n, gens)
            if w:
                return StabilityReport(False, "left", clone.name, w)
    return StabilityReport(True, "left", clone.name)


# ------------------------------------------------------------------- closure

def clonoid_closure(fns: FnSet | Iterable[BoolFn], c1, c2, cap: int | None = None) -> FnSet:
    """The (C1, C2)-clonoid generated by the given functions, within the arity cap.

    Computes C2 (F C1) arity by arity and repeats both steps on new members until nothing
    changes.  Members whose only witnesses need arity above the cap are not found.
    """
    cap = default_cap() if cap is None else cap
    src, tgt = get_clone(c1).name, get_clone(c2).name
    current = fns if isinstance(fns, FnSet) else FnSet.from_fns(list(fns), cap)
    if current.cap != cap:
        raise ValueError("function set cap differs from the requested cap")
    masks = [np.zeros(1 << (1 << n), dtype=bool) for n in range(1, cap + 1)]
    pending = [current.tables(m) for m in range(1, cap + 1)]
    gens = get_clone(tgt).generators
    while any(len(p) for p in pending):
        fresh = [np.zeros(1 << (1 << n), dtype=bool) for n in range(1, cap + 1)]
        for m, ts in enumerate(pending, start=1):
            for t in ts:
                f = BoolFn(m, int(t))
                for n in range(1, cap + 1):
                    fresh[n - 1] |= minor_images(f, src, n, cap=cap)
        pending = []
        for n in range(1, cap + 1):
            seed = np.flatnonzero(fresh[n - 1] | masks[n - 1]).astype(np.uint64)
            closed = left_closure_tables(gens, seed, n) if len(seed) else seed
            new = np.zeros_like(masks[n - 1])
            new[closed.astype(np.int64)] = True
            pending.append(np.flatnonzero(new & ~masks[n - 1]).astype(np.uint64))
            masks[n - 1] |= new
    return FnSet(cap, tuple(masks))


# --------------------------------------------------------------- descriptors

def expr_to_json(e: ClassExpr):
    """A JSON-ready tree for a class expression."""
    node = {"type": type(e).__name__}
    for name, value in getattr(e, "__dataclass_fields__", {}).items():
        v = getattr(e, name)
        if isinstance(v, ClassExpr):
            node[name] = expr_to_json(v)
        elif isinstance(v, tuple) and v and isinstance(v[0], ClassExpr):
            node[name] = [expr_to_json(x) for x in v]
        elif isinstance(v, frozenset):
            node[name] = sorted(v)
        else:
            node[name] = v
    return node


@dataclass(frozen=True)
class ClonoidDescriptor:
    name: str
    expr: ClassExpr = field(compare=False)
    source: str = ""
    target: str = ""
    row: dict | None = field(default=None, compare=False, hash=False)

    def fnset(self, cap: int) -> FnSet:
        return FnSet.from_expr(self.expr, cap)

    def to_json(self) -> dict:
        return {"name": self.name, "expr": expr_to_json(self.expr)}


def _key(e: ClassExpr, arities=(1, 2, 3, 4)) -> tuple:
    return tuple(member_mask(e, n).tobytes() for n in arities)


@lru_cache(maxsize=1)
def _known_names() -> dict:
    """Extensional key -> preferred class name, skipping clone-only names."""
    out: dict = {}
    skip = set(CLONE_EXPRS) - {"Omega", "M", "M0", "M1", "Mc", "S", "Sc"}
    for name, e in NAMED.items():
        if name in skip:
            continue
        out.setdefault(_key(e), "All" if name == "Omega" else name)
    return out


def _nice_name(e: ClassExpr) -> str:
    return _known_names().get(_key(e), e.name)


def _golden_descriptors(suite: str) -> list[ClonoidDescriptor]:
    s = load_suite(suite)
    return [ClonoidDescriptor(r["K"], parse_class(r["K"]), s.source, s.target, dict(r))
            for r in s.rows]


_GOLDEN_PAIRS = {("Mc", "Lc"): "mclc", ("Mc", "SM"): "mcsm", ("Mc", "Vc"): "mcvc",
                 ("Sc", "Lc"): "sclc", ("Sc", "SM"): "scsm", ("Sc", "Vc"): "scvc"}
_UNARY_TARGETS = ("I0", "I1", "I", "Istar", "Omega1")


def covered_pairs() -> list[tuple[str, str]]:
    pairs = [(s, "Ic") for s in CLASSIFIED_SOURCES]
    pairs += [(s, t) for s in CLASSIFIED_SOURCES for t in _UNARY_TARGETS]
    pairs += list(_GOLDEN_PAIRS)
    pairs += [(dual_clone(a), dual_clone(b)) for a, b in _GOLDEN_PAIRS]
    seen, out = set(), []
    for p in pairs:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def _nearest_covered(c1: str, c2: str):
    below = [(a, b) for a, b in covered_pairs() if clone_leq(a, c1) and clone_leq(b, c2)]
    best = [p for p in below
            if not any(q != p and clone_leq(p[0], q[0]) and clone_leq(p[1], q[1]) for q in below)]
    return best[0] if best else None


def _downset_descriptors(c1: str, cutoff: int | None) -> list[ClonoidDescriptor]:
    out = []
    for d in minor_downsets(c1, cutoff):
        e = downset_expr(d)
        out.append(ClonoidDescriptor(_nice_name(e), e, c1, "Ic"))
    return out


def enumerate_clonoids(c1, c2, cutoff: int | None = None, cap: int = 3) -> list[ClonoidDescriptor]:
    """The (C1, C2)-clonoids for a covered pair, in a fixed order.

    Monotone sources have infinitely many clonoids; ``cutoff`` keeps those built from
    classes with alternation number at most the cutoff (default: the arity cap, which
    covers every class that occurs up to that arity).
    """
    a, b = get_clone(c1).name, get_clone(c2).name
    if cutoff is None and a in M_FAMILY:
        cutoff = cap
    if (a, b) not in covered_pairs():
        raise NotCoveredError((a, b), _nearest_covered(a, b))
    if b == "Ic":
        return _downset_descriptors(a, cutoff)
    if b in _UNARY_TARGETS and a in CLASSIFIED_SOURCES:
        return [d for d in _downset_descriptors(a, cutoff) if check_left_stable(d.expr, b, cap)]
    if (a, b) in _GOLDEN_PAIRS:
        return _golden_descriptors(_GOLDEN_PAIRS[(a, b)])
    base = _golden_descriptors(_GOLDEN_PAIRS[(dual_clone(a), dual_clone(b))])
    return [ClonoidDescriptor(f"dual({d.name})", Dual(d.expr), a, b) for d in base]


# ------------------------------------------------------ largest stabilizing

def _check(k: Target, c: str, direction: str, cap: int) -> StabilityReport:
    fn = check_right_stable if direction == "right" else check_left_stable
    return fn(k, c, cap)


def _largest(k: Target, direction: str, cap: int) -> str:
    passing: set = set()
    for c in CLONE_NAMES:
        if all(d in passing for d in lower_covers(c)) and _check(k, c, direction, cap):
            passing.add(c)
    tops = [c for c in passing if not any(d in passing for d in clones_above(c))]
    if len(tops) != 1:
        raise AmbiguityError(
            f"{direction} stability at cap {cap} has maximal clones {sorted(tops)}; raise the cap")
    return tops[0]


def largest_stabilizing(k: Target | ClonoidDescriptor, cap: int | None = None) -> tuple[str, str]:
    """(C1^K, C2^K): the largest encoded clones with K C1 within K and C2 K within K."""
    cap = default_cap() if cap is None else cap
    expr = k.expr if isinstance(k, ClonoidDescriptor) else k
    return _largest(expr, "right", cap), _largest(expr, "left", cap)


# ------------------------------------------------------- constant adjunction

@dataclass(frozen=True)
class AdjunctionReport:
    source: str
    target: str
    extended: str
    constants: tuple
    total: int
    stable: int
    predicted: int
    mismatches: tuple

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _extended_clone(c2: str, consts) -> str:
    fns = [BoolFn(1, 0 if a == 0 else 3) for a in consts]
    cands = [d for d in CLONE_NAMES
             if clone_leq(c2, d) and all(get_clone(d).contains(f) for f in fns)]
    least = [d for d in cands if all(clone_leq(d, e) for e in cands)]
    return least[0]


def constant_adjunction_check(c1, c2, constants: Iterable[int], cutoff: int | None = None,
                              cap: int = 3) -> AdjunctionReport:
    """Among the (C1, C2)-clonoids, the sets stable under C2 plus the given constants are
    exactly the empty set and those containing the constants."""
    a, b = get_clone(c1).name, get_clone(c2).name
    consts = tuple(sorted(set(constants)))
    ext = _extended_clone(b, consts) if consts else b
    descs = enumerate_clonoids(a, b, cutoff=cutoff, cap=cap)
    need = [BoolFn(1, 0 if x == 0 else 3) for x in consts]
    stable = predicted = 0
    bad = []
    for d in descs:
        fs = FnSet.from_expr(d.expr, cap)
        is_stable = bool(check_left_stable(d.expr, ext, cap))
        claim = fs.is_empty() or all(f in fs for f in need)
        stable += is_stable
        predicted += claim
        if is_stable != claim:
            bad.append(d.name)
    return AdjunctionReport(a, b, ext, consts, len(descs), stable, predicted, tuple(bad))
