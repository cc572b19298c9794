"""Finite labeled posets, homomorphism search and alternating chains."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .boolfn import BoolFn

__all__ = [
    "Poset", "LabeledPoset", "HomMode", "PosetContractError", "fn_poset", "hom_exists",
    "find_hom", "longest_alternating_chain", "collapse_to_chain", "chain", "depth_map",
    "chain_hom_rule", "downsets", "DownsetLimitError", "DOWNSET_LIMIT",
]

DOWNSET_LIMIT = 24


class PosetContractError(ValueError):
    """Invalid poset data or a homomorphism mode the posets cannot honor."""


class DownsetLimitError(ValueError):
    """The poset is too large for downset enumeration."""


class HomMode(enum.Enum):
    FREE = "free"
    BOT = "bot"
    TOP = "top"
    BOT_TOP = "bottop"


def _closure(n: int, pairs) -> np.ndarray:
    leq = np.eye(n, dtype=bool)
    for a, b in pairs:
        leq[a, b] = True
    for k in range(n):
        leq |= leq[:, k:k + 1] & leq[k:k + 1, :]
    return leq


@dataclass(frozen=True, eq=False)
class Poset:
    """A finite poset on named elements; ``leq[i, j]`` means element i <= element j."""

    names: tuple
    leq: np.ndarray = field(repr=False)

    def __post_init__(self):
        leq = np.asarray(self.leq, dtype=bool)
        n = len(self.names)
        if leq.shape != (n, n):
            raise PosetContractError("order matrix has the wrong shape")
        if not leq.diagonal().all():
            raise PosetContractError("order is not reflexive")
        if ((leq & leq.T) & ~np.eye(n, dtype=bool)).any():
            raise PosetContractError("order is not antisymmetric")
        if n and ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) & ~leq).any():
            raise PosetContractError("order is not transitive")
        leq = leq.copy()
        leq.setflags(write=False)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "leq", leq)

    @classmethod
    def from_covers(cls, names: Sequence, covers) -> "Poset":
        index = {x: i for i, x in enumerate(names)}
        return cls(tuple(names), _closure(len(names), [(index[a], index[b]) for a, b in covers]))

    def __len__(self) -> int:
        return len(self.names)

    def covers(self) -> list[tuple[int, int]]:
        n = len(self)
        strict = self.leq & ~np.eye(n, dtype=bool)
        out = []
        for i in range(n):
            for j in range(n):
                if strict[i, j] and not (strict[i, :] & strict[:, j]).any():
                    out.append((i, j))
        return out

    def linear_extension(self) -> list[int]:
        return sorted(range(len(self)), key=lambda i: (int(self.leq[:, i].sum()), i))

    def to_dot(self, title: str = "poset") -> str:
        lines = [f'digraph "{title}" {{', "  rankdir=BT;"]
        for i, x in enumerate(self.names):
            lines.append(f'  n{i} [label="{x}"];')
        for i, j in self.covers():
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class LabeledPoset(Poset):
    """A poset whose elements carry labels in [0, k-1], with optional bottom and top."""

    labels: tuple = ()
    bottom: int | None = None
    top: int | None = None

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "labels", tuple(int(c) for c in self.labels))
        if len(self.labels) != len(self.names):
            raise PosetContractError("one label per element is required")
        if self.bottom is not None and not self.leq[self.bottom, :].all():
            raise PosetContractError("designated bottom is not least")
        if self.top is not None and not self.leq[:, self.top].all():
            raise PosetContractError("designated top is not greatest")

    @classmethod
    def build(cls, n: int, covers, labels, bottom=None, top=None, names=None) -> "LabeledPoset":
        return cls(tuple(names or range(n)), _closure(n, covers), tuple(labels), bottom, top)


def chain(k: int, a: int) -> LabeledPoset:
    """C^k_a: the alternating 2-chain of length k whose least label is a."""
    n = k + 1
    return LabeledPoset.build(n, [(i, i + 1) for i in range(k)], [(a + i) % 2 for i in range(n)],
                              bottom=0, top=k)


def fn_poset(f: BoolFn) -> LabeledPoset:
    """The n-cube ordered componentwise and labeled by f."""
    n = f.arity
    size = 1 << n
    covers = [(x, x | (1 << j)) for x in range(size) for j in range(n) if not x & (1 << j)]
    names = tuple(format(x, f"0{n}b") for x in range(size))
    return LabeledPoset.build(size, covers, f.values(), bottom=0, top=size - 1, names=names)


def _check_mode(p: LabeledPoset, q: LabeledPoset, mode: HomMode) -> None:
    need_bot = mode in (HomMode.BOT, HomMode.BOT_TOP)
    need_top = mode in (HomMode.TOP, HomMode.BOT_TOP)
    if need_bot and (p.bottom is None or q.bottom is None):
        raise PosetContractError("bottom-preserving mode needs designated bottoms")
    if need_top and (p.top is None or q.top is None):
        raise PosetContractError("top-preserving mode needs designated tops")


def find_hom(p: LabeledPoset, q: LabeledPoset, mode: HomMode = HomMode.FREE) -> dict | None:
    """An order- and label-preserving map p -> q honoring the mode, or None."""
    _check_mode(p, q, mode)
    fixed = {}
    if mode in (HomMode.BOT, HomMode.BOT_TOP):
        fixed[p.bottom] = q.bottom
    if mode in (HomMode.TOP, HomMode.BOT_TOP):
        if p.top in fixed and fixed[p.top] != q.top:
            return None
        fixed[p.top] = q.top
    for x, y in fixed.items():
        if p.labels[x] != q.labels[y]:
            return None
    order = p.linear_extension()
    cand = {x: [y for y in range(len(q)) if q.labels[y] == p.labels[x]] for x in order}
    assign: dict = {}

    def ok(x, y):
        for z, w in assign.items():
            if p.leq[z, x] and not q.leq[w, y]:
                return False
            if p.leq[x, z] and not q.leq[y, w]:
                return False
        return True

    def rec(i):
        if i == len(order):
            return True
        x = order[i]
        for y in ([fixed[x]] if x in fixed else cand[x]):
            if ok(x, y):
                assign[x] = y
                if rec(i + 1):
                    return True
                del assign[x]
        return False

    return dict(sorted(assign.items())) if rec(0) else None


def hom_exists(p: LabeledPoset, q: LabeledPoset, mode: HomMode = HomMode.FREE) -> bool:
    h = find_hom(p, q, mode)
    if h is not None:
        _verify_hom(p, q, h)
    return h is not None


def _verify_hom(p, q, h) -> None:
    for x in range(len(p)):
        assert p.labels[x] == q.labels[h[x]]
        for y in range(len(p)):
            if p.leq[x, y]:
                assert q.leq[h[x], h[y]]


def chain_hom_rule(k: int, a: int, l: int, b: int, mode: HomMode) -> bool:
    """Closed-form existence of a homomorphism C^k_a -> C^l_b in the given mode."""
    if mode is HomMode.FREE:
        return k < l or (k, a) == (l, b)
    if mode is HomMode.BOT:
        return k <= l and a == b
    if mode is HomMode.TOP:
        return k <= l and (a + k - b - l) % 2 == 0
    return k <= l and a == b and (k - l) % 2 == 0


def depth_map(p: LabeledPoset) -> list[int]:
    """d(x): length of a longest alternating chain inside the interval [bottom, x]."""
    if p.bottom is None:
        raise PosetContractError("depth needs a designated bottom")
    n = len(p)
    order = p.linear_extension()
    d = [0] * n
    for x in order:
        if x == p.bottom:
            d[x] = 0
            continue
        best = 0
        for y in range(n):
            if y != x and p.leq[y, x]:
                best = max(best, d[y] + (1 if p.labels[y] != p.labels[x] else 0))
        d[x] = best
    return d


def longest_alternating_chain(p: LabeledPoset) -> list[int]:
    """A longest alternating chain starting at bottom, lexicographically least by elements."""
    d = depth_map(p)
    target = max(d) if d else 0
    n = len(p)
    # walk forward from bottom, always taking the smallest next element that keeps the maximum
    memo: dict = {}

    def longest_from(x):
        if x not in memo:
            best = 0
            for y in range(n):
                if y != x and p.leq[x, y] and p.labels[y] != p.labels[x]:
                    best = max(best, 1 + longest_from(y))
            memo[x] = best
        return memo[x]

    path = [p.bottom]
    while longest_from(path[-1]) > 0:
        x = path[-1]
        need = longest_from(x) - 1
        nxt = min(y for y in range(n)
                  if y != x and p.leq[x, y] and p.labels[y] != p.labels[x] and longest_from(y) == need)
        path.append(nxt)
    assert len(path) - 1 == target
    return path


def collapse_to_chain(p: LabeledPoset) -> tuple[LabeledPoset, dict]:
    """The longest alternating chain C of p and the homomorphism x -> a_{d(x)}."""
    d = depth_map(p)
    k = max(d) if d else 0
    c = chain(k, p.labels[p.bottom])
    h = {x: d[x] for x in range(len(p))}
    _verify_hom(p, c, h)
    return c, h


def downsets(p: Poset, limit: int = DOWNSET_LIMIT) -> list[frozenset]:
    """All downsets of p as frozensets of element indices, sorted by (size, members)."""
    n = len(p)
    if n > limit:
        raise DownsetLimitError(f"poset has {n} elements; downset enumeration is limited to {limit}")
    order = p.linear_extension()
    out = []

    def rec(i, chosen: frozenset):
        if i == n:
            out.append(chosen)
            return
        x = order[i]
        rec(i + 1, chosen)
        below = {y for y in range(n) if p.leq[y, x] and y != x}
        if below <= chosen:
            rec(i + 1, chosen | {x})

    rec(0, frozenset())
    return sorted(out, key=lambda s: (len(s), sorted(s)))
