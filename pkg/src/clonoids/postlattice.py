"""The clones of Boolean functions: membership, generators, order and closure."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import boolfn as bf
from .bitops import ArityCapError, ENUM_MAX_ARITY, projection_table
from .boolfn import BoolFn
from .classes import CLONE_EXPRS, ClassExpr, member_mask, satisfies
from .fnset import FnSet, left_closure_tables

__all__ = [
    "Clone", "CLONES", "CLONE_NAMES", "HASSE_EDGES", "UnknownCloneError", "get_clone",
    "clone_contains", "clone_members", "clone_closure_upto", "clone_leq", "upper_covers",
    "lower_covers", "clones_above", "dual_clone", "generator_closure",
]


class UnknownCloneError(KeyError):
    def __str__(self):
        return f"unknown clone {self.args[0]!r}; known clones: {', '.join(CLONE_NAMES)}"


@dataclass(frozen=True)
class Clone:
    name: str
    expr: ClassExpr
    generators: tuple
    description: str

    def contains(self, f: BoolFn) -> bool:
        return satisfies(f, self.expr)

    def __str__(self) -> str:
        return self.name


C0_FN = bf.constant(0)
C1_FN = bf.constant(1)
NAND_OR = BoolFn.from_function(3, lambda x, y, z: x or (y and not z))
TC_GEN = BoolFn.from_function(3, lambda x, y, z: x and (y == z))
S_GEN = BoolFn.from_function(3, lambda x, y, z: (x + (1 - y) + (1 - z)) >= 2)
LS_GEN = BoolFn.from_function(3, lambda x, y, z: (x + y + z + 1) % 2)


def _th(m: int | None) -> BoolFn:
    return bf.threshold(2, m + 1)


def _w_generators(prefix: str, m: int | None) -> tuple:
    if prefix == "":
        return (bf.IMPLIES,) if m is None else (bf.IMPLIES, _th(m))
    if prefix == "M":
        return (bf.OR_AND, C1_FN) if m is None else (_th(m), C1_FN)
    if prefix == "Tc":
        return (NAND_OR,) if m is None else (NAND_OR, _th(m))
    return (bf.OR_AND,) if m is None else (bf.OR_AND, _th(m))


_GENS: dict[str, tuple] = {
    "Omega": (bf.AND, bf.NOT),
    "T0": (bf.AND, bf.XOR),
    "T1": (bf.OR, bf.IFF),
    "Tc": (bf.OR, TC_GEN),
    "M": (bf.AND, bf.OR, C0_FN, C1_FN),
    "M0": (bf.AND, bf.OR, C0_FN),
    "M1": (bf.AND, bf.OR, C1_FN),
    "Mc": (bf.AND, bf.OR),
    "S": (S_GEN,),
    "Sc": (bf.MAJ, bf.XOR3),
    "SM": (bf.MAJ,),
    "L": (bf.XOR, C1_FN),
    "L0": (bf.XOR,),
    "L1": (bf.IFF,),
    "Lc": (bf.XOR3,),
    "LS": (LS_GEN,),
    "V": (bf.OR, C0_FN, C1_FN),
    "V0": (bf.OR, C0_FN),
    "V1": (bf.OR, C1_FN),
    "Vc": (bf.OR,),
    "Lam": (bf.AND, C0_FN, C1_FN),
    "Lam0": (bf.AND, C0_FN),
    "Lam1": (bf.AND, C1_FN),
    "Lamc": (bf.AND,),
    "Omega1": (bf.NOT, C0_FN),
    "Istar": (bf.NOT,),
    "I": (C0_FN, C1_FN),
    "I0": (C0_FN,),
    "I1": (C1_FN,),
    "Ic": (),
}
for _m in (2, 3, None):
    _sfx = "inf" if _m is None else str(_m)
    for _prefix in ("", "M", "Tc", "Mc"):
        _gens = _w_generators(_prefix, _m)
        _GENS[f"{_prefix}W{_sfx}"] = _gens
        _GENS[f"{_prefix}U{_sfx}"] = tuple(bf.dual(g) for g in _gens)

_DESCRIPTIONS = {
    "Omega": "all Boolean functions",
    "Tc": "functions preserving 0 and 1",
    "T0": "functions preserving 0",
    "T1": "functions preserving 1",
    "M": "monotone functions",
    "M0": "monotone functions preserving 0",
    "M1": "monotone functions preserving 1",
    "Mc": "monotone functions preserving 0 and 1",
    "S": "self-dual functions",
    "Sc": "self-dual functions preserving 0",
    "SM": "self-dual monotone functions",
    "L": "affine functions over GF(2)",
    "L0": "linear functions without constant term",
    "L1": "affine functions preserving 1",
    "Lc": "affine functions preserving 0 and 1",
    "LS": "self-dual affine functions",
    "V": "constants and joins of variables",
    "V0": "joins of variables and the constant 0",
    "V1": "joins of variables and the constant 1",
    "Vc": "joins of variables",
    "Lam": "constants and meets of variables",
    "Lam0": "meets of variables and the constant 0",
    "Lam1": "meets of variables and the constant 1",
    "Lamc": "meets of variables",
    "Omega1": "essentially at most unary functions",
    "Istar": "projections and negated projections",
    "I": "projections and constants",
    "I0": "projections and the constant 0",
    "I1": "projections and the constant 1",
    "Ic": "projections",
}
for _letter, _a in (("W", 0), ("U", 1)):
    for _sfx in ("2", "3", "inf"):
        rank = "unbounded rank" if _sfx == "inf" else f"rank {_sfx}"
        base = f"{_a}-separating functions of {rank}"
        _DESCRIPTIONS[f"{_letter}{_sfx}"] = base
        _DESCRIPTIONS[f"M{_letter}{_sfx}"] = f"monotone {base}"
        _DESCRIPTIONS[f"Tc{_letter}{_sfx}"] = f"{base} preserving 0 and 1"
        _DESCRIPTIONS[f"Mc{_letter}{_sfx}"] = f"monotone {base} preserving 0 and 1"


def _chain(*names: str) -> list[tuple[str, str]]:
    return list(zip(names, names[1:]))


def _sep_edges(letter: str, bottom_links: dict) -> list[tuple[str, str]]:
    e = []
    for s in ("inf", "3", "2"):
        e += _chain(f"Mc{letter}{s}", f"Tc{letter}{s}", f"{letter}{s}")
        e += _chain(f"Mc{letter}{s}", f"M{letter}{s}", f"{letter}{s}")
    for lo, hi in (("inf", "3"), ("3", "2")):
        for p in ("Mc", "M", "Tc", ""):
            e.append((f"{p}{letter}{lo}", f"{p}{letter}{hi}"))
    e += list(bottom_links.items())
    return e


# (lower, upper) cover pairs of the lattice
HASSE_EDGES: tuple = tuple(
    _chain("Ic", "Istar", "Omega1") + [("I", "Omega1"), ("Omega1", "L")]
    + _chain("Ic", "I0", "I") + _chain("Ic", "I1", "I")
    + [("Ic", "Lc"), ("Ic", "SM"), ("I0", "L0"), ("I1", "L1"), ("Istar", "LS")]
    + [("Ic", "Lamc"), ("I0", "Lam0"), ("I1", "Lam1"), ("I", "Lam")]
    + [("Ic", "Vc"), ("I0", "V0"), ("I1", "V1"), ("I", "V")]
    + _chain("Lamc", "Lam0", "Lam") + _chain("Lamc", "Lam1", "Lam")
    + [("Lamc", "McUinf"), ("Lam0", "MUinf"), ("Lam1", "M1"), ("Lam", "M")]
    + _chain("Vc", "V0", "V") + _chain("Vc", "V1", "V")
    + [("Vc", "McWinf"), ("V0", "M0"), ("V1", "MWinf"), ("V", "M")]
    + _sep_edges("U", {"McU2": "Mc", "MU2": "M0", "TcU2": "Tc", "U2": "T0"})
    + _sep_edges("W", {"McW2": "Mc", "MW2": "M1", "TcW2": "Tc", "W2": "T1"})
    + [("SM", "McU2"), ("SM", "McW2")]
    + _chain("Lc", "LS", "L") + _chain("Lc", "L0", "L") + _chain("Lc", "L1", "L")
    + [("Lc", "Sc"), ("LS", "S"), ("L0", "T0"), ("L1", "T1"), ("L", "Omega")]
    + _chain("SM", "Sc", "S") + [("Sc", "Tc"), ("S", "Omega")]
    + _chain("Mc", "M0", "M") + _chain("Mc", "M1", "M")
    + [("Mc", "Tc"), ("M0", "T0"), ("M1", "T1"), ("M", "Omega")]
    + _chain("Tc", "T0", "Omega") + _chain("Tc", "T1", "Omega")
)

CLONES: dict[str, Clone] = {
    name: Clone(name, CLONE_EXPRS[name], _GENS[name], _DESCRIPTIONS[name]) for name in CLONE_EXPRS
}


def _topological_names() -> tuple:
    below = {c: set() for c in CLONES}
    for lo, hi in HASSE_EDGES:
        below[hi].add(lo)
    order, done = [], set()

    def visit(c):
        if c in done:
            return
        for d in sorted(below[c]):
            visit(d)
        done.add(c)
        order.append(c)

    for c in sorted(CLONES):
        visit(c)
    return tuple(order)


CLONE_NAMES: tuple = _topological_names()

_ALIASES = {"Omega01": "Tc", "Omega0": "T0", "Omega1x": "T1", "Lambda": "Lam", "Lambdac": "Lamc",
            "Lambda0": "Lam0", "Lambda1": "Lam1", "All": "Omega", "I*": "Istar"}


def get_clone(c) -> Clone:
    if isinstance(c, Clone):
        return c
    name = _ALIASES.get(c, c)
    if name not in CLONES:
        raise UnknownCloneError(c)
    return CLONES[name]


@lru_cache(maxsize=None)
def _reach() -> dict:
    up = {c: set() for c in CLONES}
    for lo, hi in HASSE_EDGES:
        up[lo].add(hi)
    reach = {}
    for c in CLONE_NAMES:
        seen, stack = {c}, [c]
        while stack:
            for d in up[stack.pop()]:
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        reach[c] = frozenset(seen)
    return reach


def clone_leq(c, d) -> bool:
    return get_clone(d).name in _reach()[get_clone(c).name]


def clones_above(c) -> list[str]:
    name = get_clone(c).name
    return [d for d in CLONE_NAMES if d != name and d in _reach()[name]]


def upper_covers(c) -> list[str]:
    name = get_clone(c).name
    return sorted(hi for lo, hi in HASSE_EDGES if lo == name)


def lower_covers(c) -> list[str]:
    name = get_clone(c).name
    return sorted(lo for lo, hi in HASSE_EDGES if hi == name)


def clone_contains(c, f: BoolFn) -> bool:
    return get_clone(c).contains(f)


def clone_members(c, arity: int) -> FnSet:
    """All members of arity 1..arity, as an FnSet with that cap."""
    if arity > ENUM_MAX_ARITY:
        raise ArityCapError(f"arity {arity} exceeds the enumeration cap {ENUM_MAX_ARITY}")
    return FnSet.from_expr(get_clone(c).expr, arity)


@lru_cache(maxsize=None)
def member_tables(c: str, n: int) -> np.ndarray:
    t = np.flatnonzero(member_mask(get_clone(c).expr, n)).astype(np.uint64)
    t.setflags(write=False)
    return t


def generator_closure(gens, n: int) -> np.ndarray:
    """n-ary part of the clone generated by gens: close the n projections."""
    seed = np.array([projection_table(i, n) for i in range(n)], dtype=np.uint64)
    return left_closure_tables(tuple(gens), seed, n)


def clone_closure_upto(fns, cap: int) -> FnSet:
    """The clone generated by fns, restricted to arities 1..cap."""
    if cap > ENUM_MAX_ARITY:
        raise ArityCapError(f"cap {cap} exceeds {ENUM_MAX_ARITY}")
    fns = tuple(fns.fns() if isinstance(fns, FnSet) else fns)
    return FnSet.from_tables({n: generator_closure(fns, n) for n in range(1, cap + 1)}, cap)


def dual_clone(c) -> str:
    name = get_clone(c).name
    pairs = {"T0": "T1", "T1": "T0", "M0": "M1", "M1": "M0", "L0": "L1", "L1": "L0",
             "I0": "I1", "I1": "I0", "V": "Lam", "V0": "Lam1", "V1": "Lam0", "Vc": "Lamc",
             "Lam": "V", "Lam0": "V1", "Lam1": "V0", "Lamc": "Vc"}
    if name in pairs:
        return pairs[name]
    for a, b in (("W", "U"), ("U", "W")):
        for prefix in ("Mc", "Tc", "M", ""):
            if name.startswith(prefix + a) and name[len(prefix) + 1:] in ("2", "3", "inf"):
                return prefix + b + name[len(prefix) + 1:]
    return name
