import random
from itertools import product

import pytest

from clonoids.bitops import ArityCapError
from clonoids.boolfn import AND, IFF, NOT, XOR3, BoolFn, constant
from clonoids.kposet import downsets
from clonoids.minorder import (
    CLASSIFIED_SOURCES, M_FAMILY, MinorClassLabel, UnsupportedSourceError, all_labels,
    class_label, downset_expr, label_expr, label_leq, leq_minor_bruteforce, minor_downsets,
    minor_poset,
)
from clonoids.classes import satisfies
from clonoids.engine import check_right_stable
from clonoids.fnset import FnSet

SMALL = [BoolFn(n, t) for n in (1, 2) for t in range(1 << (1 << n))]
ARITY3 = [BoolFn(3, t) for t in range(256)]


def test_bruteforce_examples():
    assert leq_minor_bruteforce(NOT, AND, "Omega")
    assert leq_minor_bruteforce(BoolFn.from_hex("2:C"), XOR3, "Ic")
    assert not leq_minor_bruteforce(AND, constant(0, 1), "Omega")
    with pytest.raises(ArityCapError):
        leq_minor_bruteforce(BoolFn(4, 0), AND, "Omega")


def test_label_examples():
    assert str(class_label(IFF, "Sc")) == "F^{0,1}_{11}"
    assert class_label(XOR3, "Mc").key == (3, 0, 1)
    for src in CLASSIFIED_SOURCES:
        assert "0" in str(class_label(constant(0, 2), src))
    with pytest.raises(UnsupportedSourceError):
        class_label(AND, "Lc")


def test_inconsistent_label_rejected():
    with pytest.raises(ValueError):
        MinorClassLabel("Mc", (2, 0, 1))


def test_poset_examples():
    omega = minor_poset("Omega")
    assert len(omega) == 3
    top = [str(x) for x in omega.names].index("Omega-C")
    assert sorted(omega.covers()) == sorted((i, top) for i in range(3) if i != top)
    sc = minor_poset("Sc")
    assert len(sc) == 16
    # four components of four elements each
    comps = {x.key[1:] for x in sc.names}
    assert len(comps) == 4
    for i, x in enumerate(sc.names):
        for j, y in enumerate(sc.names):
            if sc.leq[i, j]:
                assert x.key[1:] == y.key[1:]


def test_cutoff_one_gives_four_bottoms():
    p = minor_poset("Mc", 1)
    assert {str(x) for x in p.names} == {"A0_00", "A0_11", "A1_01", "A1_10"}
    assert not p.covers()
    with pytest.raises(ValueError):
        minor_poset("Mc")


@pytest.mark.parametrize("src,count", [("Sc", 1296), ("S", 19), ("Tc", 36), ("T0", 9),
                                       ("T1", 9), ("Omega", 5)])
def test_downset_counts(src, count):
    assert len(downsets(minor_poset(src))) == count


@pytest.mark.parametrize("src", CLASSIFIED_SOURCES)
def test_closed_form_agrees_with_bruteforce_small(src):
    labels = {f: class_label(f, src) for f in SMALL}
    for f in SMALL:
        for g in SMALL:
            assert leq_minor_bruteforce(f, g, src) == label_leq(labels[f], labels[g]), (f, g, src)


@pytest.mark.parametrize("src", CLASSIFIED_SOURCES)
def test_closed_form_agrees_with_bruteforce_sampled_arity3(src):
    rng = random.Random(7)
    for _ in range(60):
        f, g = rng.choice(ARITY3), rng.choice(ARITY3 + SMALL)
        assert leq_minor_bruteforce(f, g, src) == label_leq(class_label(f, src), class_label(g, src))


@pytest.mark.parametrize("src", CLASSIFIED_SOURCES)
def test_labels_are_equivalence_classes(src):
    for f in SMALL:
        for g in SMALL:
            same = class_label(f, src) == class_label(g, src)
            both = leq_minor_bruteforce(f, g, src) and leq_minor_bruteforce(g, f, src)
            assert same == both


@pytest.mark.parametrize("src", CLASSIFIED_SOURCES)
def test_label_expr_membership(src):
    cutoff = 3 if src in M_FAMILY else None
    labels = all_labels(src, cutoff)
    for f in SMALL + ARITY3:
        hits = [x for x in labels if satisfies(f, label_expr(x))]
        assert hits == [class_label(f, src)]


@pytest.mark.parametrize("src", ["Tc", "T0", "Omega", "S"])
def test_downset_unions_are_right_stable(src):
    for d in minor_downsets(src):
        assert check_right_stable(FnSet.from_expr(downset_expr(d), 2), src, 2)


def test_m_family_downsets_right_stable_with_cutoff():
    for src in M_FAMILY:
        ds = minor_downsets(src, 2)
        for d in ds:
            assert check_right_stable(FnSet.from_expr(downset_expr(d), 2), src, 2)
