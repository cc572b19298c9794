"""Concrete stability violations used to pin down largest stabilizing clones.

Each entry names the operation, its arguments and the expected result, plus the classes
the arguments must belong to and the class the result must avoid.  ``verify`` recomputes
everything bit-exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .boolfn import AND, NOT, BoolFn, compose, constant, lambda_fn, projection, star
from .classes import parse_class, satisfies

__all__ = ["ViolationWitness", "WITNESSES", "verify", "verify_all", "MAJ", "OR_AND", "XOR3",
           "SC_ROW_ORDER", "from_rows"]

MAJ = BoolFn.from_function(3, lambda x, y, z: int(x + y + z >= 2))
OR_AND = BoolFn.from_function(3, lambda x, y, z: x | (y & z))
XOR3 = BoolFn.from_function(3, lambda x, y, z: x ^ y ^ z)
ID = projection(1, 1)

# row order of the ternary operation tables: pairs of complementary tuples
SC_ROW_ORDER = ("000", "111", "001", "110", "010", "101", "100", "011")
_BIN_ORDER = ("00", "01", "10", "11")


def from_rows(order, column) -> BoolFn:
    """A function from a column of values listed against the given tuple order."""
    vals = dict(zip(order, column))
    n = len(order[0])
    return BoolFn.from_values([vals[format(x, f"0{n}b")] for x in range(1 << n)])


def _strip_leading_dummy(f: BoolFn) -> BoolFn:
    half = 1 << (f.arity - 1)
    v = f.values()
    if v[:half] != v[half:]:
        raise ValueError(f"{f} depends on its first argument")
    return BoolFn.from_values(v[:half])


@dataclass(frozen=True)
class ViolationWitness:
    """outer(inner...) (kind "compose") or outer * inner[0] (kind "star") leaves ``avoid``.

    For star with a constant, the first argument of the result is fictitious and the
    expected result is given without it.
    """

    name: str
    kind: str
    outer: BoolFn
    inner: tuple
    expected: BoolFn
    members: tuple  # (function, class expression) pairs that must hold
    avoid: str

    def result(self) -> BoolFn:
        if self.kind == "compose":
            return compose(self.outer, list(self.inner))
        r = star(self.outer, self.inner[0])
        if self.inner[0].table in (0, (1 << (1 << self.inner[0].arity)) - 1) and r.arity > 1:
            return _strip_leading_dummy(r)
        return r


def verify(w: ViolationWitness) -> list[str]:
    """Problems with a witness; an empty list means it reproduces exactly."""
    problems = []
    got = w.result()
    if got != w.expected:
        problems.append(f"{w.name}: computed {got}, expected {w.expected}")
    for f, cls in w.members:
        if not satisfies(f, parse_class(cls)):
            problems.append(f"{w.name}: {f} is not in {cls}")
    if satisfies(got, parse_class(w.avoid)):
        problems.append(f"{w.name}: {got} lies in {w.avoid}")
    return problems


def verify_all() -> list[str]:
    return [p for w in WITNESSES for p in verify(w)]


def _lam(bits: str) -> BoolFn:
    return lambda_fn(bits)


_AB = {(0, 0): "OO", (0, 1): "OI", (1, 0): "IO", (1, 1): "II"}
_SMALL = "Smaj | Smin | Refl"


def _left_monotone() -> list[ViolationWitness]:
    a2 = "A2_11"
    return [
        ViolationWitness("neg-alt2", "compose", NOT, (_lam("101"),), _lam("010"),
                         ((_lam("101"), a2),), "Eioo | C0"),
        ViolationWitness("and-alt2", "compose", AND, (_lam("11101"), _lam("10111")), _lam("10101"),
                         ((_lam("11101"), a2), (_lam("10111"), a2), (_lam("10101"), "A4_11")),
                         "Eiii | A<=2_11"),
        ViolationWitness("orand-alt2", "compose", OR_AND,
                         (_lam("10001"), _lam("11101"), _lam("10111")), _lam("10101"),
                         ((_lam("10001"), a2), (_lam("11101"), a2), (_lam("10111"), a2)),
                         "Eiii | A<=2_11"),
        ViolationWitness("and-mono-antitone", "compose", AND, (_lam("011"), _lam("110")),
                         _lam("010"), ((_lam("011"), "Mc"), (_lam("110"), "Mcneg"),
                                       (_lam("010"), "A2_00")), "Eioo | C0"),
        ViolationWitness("and-mono-alt2", "compose", AND, (_lam("0111"), _lam("1101")),
                         _lam("0101"), ((_lam("0111"), "Mc"), (_lam("1101"), a2),
                                        (_lam("0101"), "A3_01")), "Eioi | M"),
        ViolationWitness("orand-mono-alt2", "compose", OR_AND,
                         (_lam("0001"), _lam("0111"), _lam("1101")), _lam("0101"),
                         ((_lam("0001"), "Mc"), (_lam("0111"), "Mc"), (_lam("1101"), a2)),
                         "Eioi | M"),
    ]


def _right_monotone() -> list[ViolationWitness]:
    c0, c1 = constant(0), constant(1)
    return [
        ViolationWitness("alt2-star-neg", "star", _lam("101"), (NOT,), _lam("010"),
                         ((_lam("101"), "A2_11"), (_lam("010"), "OO-C0")), "Eioo | C0"),
        ViolationWitness("alt2-star-xor3", "star", _lam("101"), (XOR3,), _lam("10101"),
                         ((_lam("101"), "A2_11"), (_lam("10101"), "A4_11")), "Eiii | A<=2_11"),
        ViolationWitness("id-star-xor3", "star", ID, (XOR3,), _lam("0101"), (), "Eioi | Mc"),
        ViolationWitness("id-star-0", "star", ID, (c0,), c0, (), "Eioo"),
        ViolationWitness("alt2-star-0", "star", _lam("101"), (c0,), _lam("10"),
                         ((_lam("101"), "A2_11"),), "Eiio"),
        ViolationWitness("alt4-star-0", "star", _lam("10101"), (c0,), _lam("1010"),
                         ((_lam("10101"), "A4_11"),), "Eiio | Mcneg"),
        ViolationWitness("alt3-star-0", "star", _lam("0101"), (c0,), _lam("010"),
                         ((_lam("0101"), "A3_01"),), "Eioo | C0"),
        ViolationWitness("id-star-1", "star", ID, (c1,), c1, (), "Eiii"),
        ViolationWitness("alt2-star-1", "star", _lam("101"), (c1,), _lam("01"),
                         ((_lam("101"), "A2_11"),), "Eioi"),
        ViolationWitness("alt4-star-1", "star", _lam("10101"), (c1,), _lam("0101"),
                         ((_lam("10101"), "A4_11"),), "Eioi | Mc"),
        ViolationWitness("alt3-star-1", "star", _lam("1010"), (c1,), _lam("010"),
                         ((_lam("1010"), "A3_10"),), "Eioo | C0"),
    ]


def _self_dual_source() -> list[ViolationWitness]:
    out = []
    t = SC_ROW_ORDER
    for a, b in product((0, 1), repeat=2):
        if (a, b) == (0, 0):
            continue
        ab = _AB[(a, b)]
        smaj = f"Smaj & {ab}"
        f = from_rows(t, (a, b, 1, 1, 1, 0, 0, 1))
        g = from_rows(t, (a, b, 1, 1, 0, 1, 0, 1))
        out.append(ViolationWitness(
            f"and-smaj-{a}{b}", "compose", AND, (f, g), from_rows(t, (a, b, 1, 1, 0, 0, 0, 1)),
            ((f, smaj), (g, smaj)), f"{_SMALL} | (All - {ab})"))
        for c, d in product((0, 1), repeat=2):
            h = from_rows(t, (c, d, 1, 1, 0, 0, 0, 0))
            out.append(ViolationWitness(
                f"maj-smaj-{a}{b}-{c}{d}", "compose", MAJ, (f, g, h),
                from_rows(t, (a, b, 1, 1, 0, 0, 0, 1)),
                ((f, smaj), (g, smaj), (h, _AB[(c, d)] if c != d else f"Refl & {_AB[(c, d)]}")),
                f"{_SMALL} | (All - {ab})"))
        r = from_rows(t, (1, 1, 1, 1, 0, 0, 0, 0))
        g2 = from_rows(t, (a, b, 0, 1, 0, 1, 0, 1))
        h2 = from_rows(t, (a, b, 0, 1, 1, 0, 0, 1))
        out.append(ViolationWitness(
            f"orand-refl-smaj-{a}{b}", "compose", OR_AND, (r, g2, h2),
            from_rows(t, (1, 1, 1, 1, 0, 0, 0, 1)),
            ((r, "Refl & II"), (g2, smaj), (h2, smaj)), f"{_SMALL} | Eiii"))
    for a in (0, 1):
        na = 1 - a
        f = from_rows(_BIN_ORDER, (a, 0, 1, na))
        g = from_rows(_BIN_ORDER, (0, 1, 1, 0))
        out.append(ViolationWitness(
            f"and-nonconst-refl00-{a}", "compose", AND, (f, g), from_rows(_BIN_ORDER, (0, 0, 1, 0)),
            ((f, _AB[(a, na)]), (g, "Refl & OO")), "Eioo | (Refl & OO)"))
        f3 = from_rows(t, (a, na, 0, 0, 0, 0, 0, 0))
        s = from_rows(t, (1, 1, 1, 1, 0, 1, 0, 1))
        s2 = from_rows(t, (1, 1, 1, 1, 1, 0, 0, 1))
        out.append(ViolationWitness(
            f"orand-nonconst-smaj11-{a}", "compose", OR_AND, (f3, s, s2),
            from_rows(t, (1, 1, 1, 1, 0, 0, 0, 1)),
            ((f3, _AB[(a, na)]), (s, "Smaj & II"), (s2, "Smaj & II")), f"{_SMALL} | Eiii"))
    return out


WITNESSES: tuple = tuple(_left_monotone() + _right_monotone() + _self_dual_source())
