"""The C-minor quasi-order: brute force, closed-form class labels, minor posets."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product

import numpy as np

from .bitops import ArityCapError
from .boolfn import BoolFn, range2_signature
from .classes import (
    AltExactly, ClassExpr, ConstVal, Difference, NAMED, Range2Class, ValueAt0, format_r2,
    intersect, union,
)
from .fnset import image_search
from .kposet import Poset, downsets
from .postlattice import get_clone, member_tables

__all__ = [
    "CLASSIFIED_SOURCES", "M_FAMILY", "MinorClassLabel", "UnsupportedSourceError",
    "leq_minor_bruteforce", "minor_images", "class_label", "label_leq", "label_expr",
    "all_labels", "minor_poset", "minor_downsets", "downset_expr", "BRUTE_FORCE_CAP",
]

BRUTE_FORCE_CAP = 3
M_FAMILY = ("M", "M0", "M1", "Mc")
CLASSIFIED_SOURCES = M_FAMILY + ("Sc", "S", "Tc", "T0", "T1", "Omega")
_R2_SETS = tuple(
    frozenset(r) for r in
    (("0",), ("1",), ("01",), ("0", "1"), ("0", "01"), ("1", "01"), ("0", "1", "01"))
)

# value-block sources: label -> expression, and the strict order as (lower, upper) pairs
_BLOCKS = {
    "Tc": (("C0", "C1", "OO-C0", "II-C1", "OI", "IO"), [("C0", "OO-C0"), ("C1", "II-C1")]),
    "T0": (("C0", "C1", "OX-C0", "IX-C1"), [("C0", "OX-C0"), ("C1", "IX-C1")]),
    "T1": (("C0", "C1", "XO-C0", "XI-C1"), [("C0", "XO-C0"), ("C1", "XI-C1")]),
    "Omega": (("C0", "C1", "Omega-C"), [("C0", "Omega-C"), ("C1", "Omega-C")]),
}


class UnsupportedSourceError(ValueError):
    """The source clone has no closed-form minor classification here."""


def _source(c) -> str:
    name = get_clone(c).name
    if name not in CLASSIFIED_SOURCES:
        raise UnsupportedSourceError(
            f"{name} is not a classified source; choose one of {', '.join(CLASSIFIED_SOURCES)}")
    return name


# ------------------------------------------------------------------ brute force

def _drop_dummies(g: BoolFn) -> BoolFn:
    """g restricted to its essential variables (a nullary result is kept unary)."""
    n = g.arity
    vals = g.values()
    keep = [j for j in range(n)
            if any(vals[x] != vals[x ^ (1 << (n - 1 - j))] for x in range(1 << n))]
    if len(keep) == n:
        return g
    if not keep:
        return BoolFn.from_values([vals[0]] * 2)

    def fn(*a):
        x = 0
        for j, v in zip(keep, a):
            x |= v << (n - 1 - j)
        return vals[x]
    return BoolFn.from_function(len(keep), fn)


def _canonical(g: BoolFn) -> BoolFn:
    g = _drop_dummies(g)
    n = g.arity
    vals = g.values()
    best = None
    for perm in permutations(range(n)):
        t = BoolFn.from_function(n, lambda *a: vals[sum(a[perm[j]] << (n - 1 - j) for j in range(n))])
        if best is None or t.table < best.table:
            best = t
    return best


@lru_cache(maxsize=None)
def _images(g: BoolFn, c: str, n: int) -> np.ndarray:
    choices = member_tables(c, n)
    if not len(choices):
        return np.zeros(1 << (1 << n), dtype=bool)
    out = np.zeros(1 << (1 << n), dtype=bool)
    out[image_search(g, choices, n)[0].astype(np.int64)] = True
    out.setflags(write=False)
    return out


def minor_images(g: BoolFn, c, n: int, cap: int = BRUTE_FORCE_CAP) -> np.ndarray:
    """Mask over n-ary tables of the functions g(h1..hm) with every hi in C^(n)."""
    if n > cap or g.arity > cap:
        raise ArityCapError(f"brute-force minor search is limited to arity {cap}")
    return _images(_canonical(g), get_clone(c).name, n)


def leq_minor_bruteforce(f: BoolFn, g: BoolFn, c, cap: int = BRUTE_FORCE_CAP) -> bool:
    """f = g(h1..hm) for some h1..hm in C of arity f.arity, by exhaustive search."""
    return bool(minor_images(g, c, f.arity, cap)[f.table])


# --------------------------------------------------------------------- labels

@dataclass(frozen=True)
class MinorClassLabel:
    """A C-equivalence class for one of the classified source clones."""

    source: str
    key: tuple

    def __post_init__(self):
        if self.source in M_FAMILY:
            k, a, b = self.key
            if k < 0 or (a + k) % 2 != b:
                raise ValueError(f"inconsistent alternation label {self.key}")
        elif self.source == "Sc":
            r, a, b = self.key
            if ("01" if a != b else str(a)) not in r:
                raise ValueError(f"inconsistent pair-type label {self.key}")
        elif self.source == "S":
            if not self.key or not self.key[0]:
                raise ValueError("empty pair-type set")
        elif self.source in _BLOCKS:
            if self.key[0] not in _BLOCKS[self.source][0]:
                raise ValueError(f"unknown block {self.key[0]!r} for {self.source}")
        else:
            raise UnsupportedSourceError(self.source)

    def __str__(self) -> str:
        if self.source in M_FAMILY:
            k, a, b = self.key
            return f"A{k}_{a}{b}"
        if self.source == "Sc":
            r, a, b = self.key
            return f"F^{{{format_r2(r)}}}_{{{a}{b}}}"
        if self.source == "S":
            return f"F^{{{format_r2(self.key[0])}}}"
        return self.key[0]

    def sort_key(self):
        if self.source in ("Sc", "S"):
            r = self.key[0]
            return (len(r), _R2_SETS.index(r)) + tuple(self.key[1:])
        if self.source in _BLOCKS:
            return (_BLOCKS[self.source][0].index(self.key[0]),)
        return self.key


def _block(f: BoolFn, source: str) -> str:
    a, b = f.at_zero, f.at_one
    const = f.table in (0, (1 << (1 << f.arity)) - 1)
    if const:
        return f"C{a}"
    if source == "Omega":
        return "Omega-C"
    if source == "T0":
        return "OX-C0" if a == 0 else "IX-C1"
    if source == "T1":
        return "XO-C0" if b == 0 else "XI-C1"
    return {(0, 0): "OO-C0", (1, 1): "II-C1", (0, 1): "OI", (1, 0): "IO"}[(a, b)]


def class_label(f: BoolFn, c) -> MinorClassLabel:
    """The C-equivalence class of f."""
    source = _source(c)
    if source in M_FAMILY:
        return MinorClassLabel(source, (f.alt, f.at_zero, f.at_one))
    if source in ("Sc", "S"):
        r, a, b = range2_signature(f)
        return MinorClassLabel(source, (r, a, b) if source == "Sc" else (r,))
    return MinorClassLabel(source, (_block(f, source),))


def label_leq(x: MinorClassLabel, y: MinorClassLabel) -> bool:
    """Closed-form C-minor comparability of two classes of the same source."""
    if x.source != y.source:
        raise ValueError("labels belong to different source clones")
    s = x.source
    if s in M_FAMILY:
        (k, a, _), (l, b, _) = x.key, y.key
        if s == "M":
            return k < l or (k, a) == (l, b)
        if s == "M0":
            return k <= l and a == b
        if s == "M1":
            return k <= l and (a + k - b - l) % 2 == 0
        return k <= l and a == b and (k - l) % 2 == 0
    if s == "Sc":
        return x.key[1:] == y.key[1:] and x.key[0] <= y.key[0]
    if s == "S":
        return x.key[0] <= y.key[0]
    return x == y or (x.key[0], y.key[0]) in _BLOCKS[s][1]


def label_expr(x: MinorClassLabel) -> ClassExpr:
    """The class of functions carrying label x."""
    s = x.source
    if s in M_FAMILY:
        k, a, _ = x.key
        return intersect(AltExactly(k), ValueAt0(a)) if k else ConstVal(a)
    if s == "Sc":
        return Range2Class(*x.key)
    if s == "S":
        return Range2Class(x.key[0])
    name = x.key[0]
    if name == "Omega-C":
        return Difference(NAMED["All"], NAMED["C"])
    if "-" in name:
        left, right = name.split("-")
        return Difference(NAMED[left], NAMED[right])
    return NAMED[name]


def all_labels(c, cutoff: int | None = None) -> list[MinorClassLabel]:
    """Every class of the source, in canonical order (M family: Alt <= cutoff)."""
    s = _source(c)
    if s in M_FAMILY:
        if cutoff is None:
            raise ValueError(f"the {s}-minor poset is infinite; an Alt cutoff is required")
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        return [MinorClassLabel(s, (k, a, (a + k) % 2)) for k in range(cutoff + 1) for a in (0, 1)]
    if s == "Sc":
        out = []
        for a, b in product((0, 1), repeat=2):
            t = "01" if a != b else str(a)
            out += [MinorClassLabel(s, (r, a, b)) for r in _R2_SETS if t in r]
        return out
    if s == "S":
        return [MinorClassLabel(s, (r,)) for r in _R2_SETS]
    return [MinorClassLabel(s, (name,)) for name in _BLOCKS[s][0]]


def minor_poset(c, cutoff: int | None = None) -> Poset:
    """The C-minor poset on class labels (M family truncated at Alt <= cutoff)."""
    labels = all_labels(c, cutoff)
    leq = np.array([[label_leq(x, y) for y in labels] for x in labels], dtype=bool)
    return Poset(tuple(labels), leq)


def minor_downsets(c, cutoff: int | None = None) -> list[tuple[MinorClassLabel, ...]]:
    """All downsets of the minor poset, each as a tuple of labels."""
    p = minor_poset(c, cutoff)
    return [tuple(p.names[i] for i in sorted(d)) for d in downsets(p)]


def downset_expr(labels) -> ClassExpr:
    """The union of the classes in a downset."""
    labels = list(labels)
    if not labels:
        return NAMED["Empty"]
    return union(*(label_expr(x) for x in labels))
