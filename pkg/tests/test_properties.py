"""Randomized checks of the composition and clonoid algebra at small arity caps."""
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clonoids.boolfn import BoolFn, compose, dual, negate, projection
from clonoids.classes import NAMED, Dual, parse_class, satisfies
from clonoids.engine import (
    check_left_stable, check_right_stable, clonoid_closure, enumerate_clonoids,
)
from clonoids.fnset import FnSet, bar, class_compose
from clonoids.postlattice import CLONE_NAMES, dual_clone, member_tables
from clonoids.tables import DISTINCT_ARITY
from clonoids.engine import _key

CAP = 2
EXAMPLES = settings(max_examples=1000, deadline=None)
ESS_UNARY = ("Ic", "I0", "I1", "I", "Istar", "Omega1")
SOURCES = ("Mc", "M", "M0", "M1", "Sc", "S", "Tc", "T0", "T1", "Omega", "Lc", "SM", "Vc", "Ic")
# (clone, constants, the clone they generate together) where the union is itself a clone
ADJOINED = (("Ic", (0,), "I0"), ("Ic", (1,), "I1"), ("Ic", (0, 1), "I"),
            ("Mc", (0,), "M0"), ("Mc", (1,), "M1"), ("Mc", (0, 1), "M"),
            ("Vc", (0,), "V0"), ("Vc", (1,), "V1"), ("Vc", (0, 1), "V"),
            ("Lamc", (0,), "Lam0"), ("Lamc", (1,), "Lam1"), ("Lamc", (0, 1), "Lam"))


def fnsets(cap=CAP, max_size=3):
    """Small random function sets of arity at most cap."""
    per = [st.sets(st.integers(0, (1 << (1 << n)) - 1), max_size=max_size) for n in range(1, cap + 1)]
    return st.tuples(*per).map(
        lambda ts: FnSet.from_tables({n: np.array(sorted(t), dtype=np.uint64)
                                      for n, t in enumerate(ts, start=1)}, cap))


def _fns(k: FnSet):
    return k.fns()


def _consts(values, cap=CAP):
    return FnSet.from_fns([BoolFn(n, 0 if a == 0 else (1 << (1 << n)) - 1)
                           for a in values for n in range(1, cap + 1)], cap)


def _unary_closed(k: FnSet) -> FnSet:
    """Essentially unary functions: the unary members of k and all their minors."""
    u = k.tables(1)
    return FnSet.from_tables({n: np.array(sorted({compose(BoolFn(1, int(t)), [projection(i, n)]).table
                                                  for t in u for i in range(1, n + 1)}),
                                          dtype=np.uint64) for n in range(1, k.cap + 1)}, k.cap)


def _minor_closed(k: FnSet) -> FnSet:
    return clonoid_closure(k, "Ic", "Ic", k.cap)


# ------------------------------------------------------------- associativity

@EXAMPLES
@given(fnsets(), fnsets(), fnsets())
def test_associativity_inclusion(i, j, k):
    assert class_compose(class_compose(i, j), k) <= class_compose(i, class_compose(j, k))


@EXAMPLES
@given(fnsets(), fnsets(), fnsets())
def test_associativity_unary_outer(i, j, k):
    u = _unary_closed(i)
    assert class_compose(class_compose(u, j), k) == class_compose(u, class_compose(j, k))


@EXAMPLES
@given(fnsets(max_size=2), fnsets(max_size=2))
def test_associativity_minor_closed_middle_unary_inner(i, k):
    # with unary inner functions no merged tuple exceeds the cap
    j = _minor_closed(FnSet.from_tables({1: i.tables(1), 2: k.tables(2)}, CAP))
    k1 = FnSet.from_tables({1: k.tables(1), 2: np.zeros(0, dtype=np.uint64)}, CAP)
    assert class_compose(class_compose(i, j), k1) == class_compose(i, class_compose(j, k1))


# --------------------------------------------------------------- unions

@EXAMPLES
@given(fnsets(), fnsets(), fnsets())
def test_union_distributes_on_the_left(f1, f2, g):
    assert class_compose(f1 | f2, g) == class_compose(f1, g) | class_compose(f2, g)


@EXAMPLES
@given(fnsets(), fnsets(), fnsets())
def test_union_distributes_on_the_right_for_unary_outer(f, g1, g2):
    u = _unary_closed(f)
    assert class_compose(u, g1 | g2) == class_compose(u, g1) | class_compose(u, g2)


@EXAMPLES
@given(fnsets(), fnsets(), st.sampled_from(SOURCES), st.sampled_from(ESS_UNARY))
def test_closure_additive_for_unary_targets(f, g, c1, c2):
    assert clonoid_closure(f | g, c1, c2, CAP) == \
        clonoid_closure(f, c1, c2, CAP) | clonoid_closure(g, c1, c2, CAP)


# ------------------------------------------------- complements and constants

@EXAMPLES
@given(fnsets(), st.sampled_from(CLONE_NAMES))
def test_complement_and_constant_constructions(f, c):
    k = clonoid_closure(f, c, "Ic", CAP)
    kb = bar(k)
    c0, call = _consts((0,)), _consts((0, 1))
    for s, target in ((kb, "Ic"), (k | c0, "I0"), (k | _consts((1,)), "I1"), (k | call, "I"),
                      (k | kb, "Istar"), (k | kb | call, "Omega1")):
        assert check_right_stable(s, c, CAP)
        assert check_left_stable(s, target, CAP)


@EXAMPLES
@given(fnsets(), st.sampled_from(CLONE_NAMES))
def test_negation_stable_sets_are_self_complementary(f, c):
    k = clonoid_closure(f, c, "Istar", CAP)
    assert k == bar(k)


def test_adjoined_clones_are_unions():
    for c2, consts, ext in ADJOINED:
        for n in (1, 2, 3):
            want = set(member_tables(c2, n).tolist()) | {0 if a == 0 else (1 << (1 << n)) - 1 for a in consts}
            assert set(member_tables(ext, n).tolist()) == want, (c2, consts, ext)


@EXAMPLES
@given(fnsets(), st.sampled_from(SOURCES), st.sampled_from(ADJOINED))
def test_adding_constants_extends_the_target(f, c1, adj):
    c2, consts, ext = adj
    k = clonoid_closure(f, c1, c2, CAP) | _consts(consts)
    assert check_right_stable(k, c1, CAP) and check_left_stable(k, ext, CAP)


@EXAMPLES
@given(fnsets(), st.sampled_from(SOURCES), st.sampled_from(ADJOINED))
def test_constant_adjunction_correspondence(f, c1, adj):
    c2, consts, ext = adj
    cs = _consts(consts)
    k = clonoid_closure(f, c1, ext, CAP)
    if not k.is_empty():
        assert cs <= k
        assert check_left_stable(k, c2, CAP) and check_right_stable(k, c1, CAP)
    k2 = clonoid_closure(f | cs, c1, c2, CAP)
    assert check_left_stable(k2, ext, CAP)


# --------------------------------------------------------------- duality

@EXAMPLES
@given(fnsets(), st.sampled_from(CLONE_NAMES), st.sampled_from(CLONE_NAMES))
def test_stability_is_dual_invariant(k, c1, c2):
    kd = k.dualized()
    assert bool(check_right_stable(k, c1, CAP)) == bool(check_right_stable(kd, dual_clone(c1), CAP))
    assert bool(check_left_stable(k, c2, CAP)) == bool(check_left_stable(kd, dual_clone(c2), CAP))


@EXAMPLES
@given(fnsets(), st.sampled_from(SOURCES), st.sampled_from(CLONE_NAMES))
def test_closure_commutes_with_duality(f, c1, c2):
    assert clonoid_closure(f, c1, c2, CAP).dualized() == \
        clonoid_closure(f.dualized(), dual_clone(c1), dual_clone(c2), CAP)


def test_duals_of_join_clonoids_are_meet_clonoids():
    descs = enumerate_clonoids("Mc", "Vc")
    keys = set()
    for d in descs:
        e = Dual(d.expr)
        assert check_right_stable(e, "Mc", 3)
        assert check_left_stable(e, "Lamc", 3)
        keys.add(_key(e, tuple(range(1, DISTINCT_ARITY + 1))))
    assert len(keys) == 56


# ------------------------------------------------------------ single functions

@EXAMPLES
@given(st.integers(1, 3).flatmap(lambda n: st.integers(0, (1 << (1 << n)) - 1).map(lambda t: BoolFn(n, t))))
def test_smaj_and_smin_match_self_dual_bounds(f):
    n = f.arity
    selfdual = [BoolFn(n, t) for t in member_tables("S", n).tolist()]
    above = any(all(g.values()[x] <= f.values()[x] for x in range(1 << n)) for g in selfdual)
    below = any(all(f.values()[x] <= g.values()[x] for x in range(1 << n)) for g in selfdual)
    assert satisfies(f, NAMED["Smaj"]) == above
    assert satisfies(f, NAMED["Smin"]) == below
    assert satisfies(dual(f), NAMED["Smaj"]) == satisfies(f, NAMED["Smin"])


@EXAMPLES
@given(st.integers(1, 4).flatmap(lambda n: st.integers(0, (1 << (1 << n)) - 1).map(lambda t: BoolFn(n, t))))
def test_dual_and_negation_commute_with_classes(f):
    assert dual(negate(f)) == negate(dual(f))
    for name in ("Mc", "Sc", "Lc", "SM", "Eq", "Refl"):
        e = parse_class(name)
        assert satisfies(dual(f), Dual(e)) == satisfies(f, e)
