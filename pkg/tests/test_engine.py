import pytest

from clonoids.boolfn import AND, IFF, NOT, OR, XOR3, BoolFn, constant, lambda_fn, projection
from clonoids.classes import parse_class
from clonoids.engine import (
    AmbiguityError, NotCoveredError, check_left_stable, check_right_stable, clonoid_closure,
    constant_adjunction_check, covered_pairs, enumerate_clonoids, largest_stabilizing,
    minor_closed,
)
from clonoids.fnset import FnSet, bar, class_compose
from clonoids.minorder import all_labels, class_label, downset_expr, label_leq, minor_images
from clonoids.postlattice import clone_members


def _members_upto(name, cap):
    return FnSet.from_tables({n: clone_members(name, n).tables(n) for n in range(1, cap + 1)}, cap)


def test_class_compose_with_projections_gives_minors():
    outer = FnSet.from_fns([OR], 3)
    got = class_compose(outer, _members_upto("Ic", 3))
    for n in (1, 2, 3):
        assert set(got.tables(n).tolist()) == set(
            minor_images(OR, "Ic", n).nonzero()[0].tolist())


def test_class_compose_with_negation_is_bar():
    k = FnSet.from_expr(parse_class("OX"), 3)
    assert class_compose(FnSet.from_fns([NOT], 3), k) == bar(k)


def test_class_compose_constants_absorb():
    c0 = FnSet.from_expr(parse_class("C0"), 3)
    k = FnSet.from_fns([XOR3], 3)
    got = class_compose(c0, k)
    assert got.tables(3).tolist() == [0]
    assert got.is_empty() is False


def test_right_stability_examples():
    r = check_right_stable(parse_class("A<=2_11"), "Lc", 5)
    assert not r
    w = r.witness
    assert w.kind == "star"
    assert (w.outer, w.inner[0], w.result) == (lambda_fn("101"), XOR3, lambda_fn("10101"))
    assert check_right_stable(parse_class("Eq"), "Tc", 3)
    assert check_right_stable(parse_class("All"), "Omega", 3)


def test_left_stability_examples():
    assert check_left_stable(parse_class("Smaj"), "Vc", 3)
    r = check_left_stable(parse_class("A<=2_11"), "Lamc", 5)
    assert not r
    assert r.witness.result not in FnSet.from_expr(parse_class("A<=2_11"), 3) or r.witness.result.arity > 3
    assert AND in (r.witness.outer,)
    for name in ("OX", "Eq", "A2_11", "Smaj"):
        assert check_left_stable(parse_class(name), "Ic", 3)


def test_stability_on_fnset_and_minor_closure():
    k = FnSet.from_fns([AND], 2)
    assert not minor_closed(k, 2)
    closed = clonoid_closure([AND], "Ic", "Ic", 2)
    assert minor_closed(closed, 2)
    assert check_right_stable(closed, "Ic", 2)


def test_closure_examples():
    got = clonoid_closure([IFF], "Sc", "Ic", 3)
    top = class_label(IFF, "Sc")
    below = [x for x in all_labels("Sc") if label_leq(x, top)]
    assert len(below) == 2
    assert got.matches(downset_expr(below))
    assert got.matches(parse_class("Refl & II"))
    assert constant(1, 1) in got
    assert clonoid_closure([], "Mc", "Vc", 3).is_empty()
    assert clonoid_closure([lambda_fn("101")], "Mc", "Vc", 3).matches(parse_class("A<=2_11"))


def test_closure_is_stable():
    got = clonoid_closure([lambda_fn("0110")], "Mc", "SM", 3)
    assert check_right_stable(got, "Mc", 3)
    assert check_left_stable(got, "SM", 3)


def test_enumerate_examples():
    names = [d.name for d in enumerate_clonoids("Omega", "Ic")]
    assert sorted(names) == sorted(["Empty", "C0", "C1", "C", "All"])
    assert len(enumerate_clonoids("Mc", "Vc")) == 56
    assert len(enumerate_clonoids("Sc", "Vc")) == 123


def test_enumerate_dual_pair():
    descs = enumerate_clonoids("Mc", "Lamc")
    assert len(descs) == 56
    assert descs[0].name.startswith("dual(")


def test_enumerate_not_covered_names_nearest():
    with pytest.raises(NotCoveredError) as exc:
        enumerate_clonoids("Lc", "Lc")
    assert exc.value.pair == ("Lc", "Lc")
    assert "not covered" in str(exc.value)
    for pair in covered_pairs():
        assert exc.value.nearest is None or exc.value.nearest in covered_pairs()


def test_largest_stabilizing_examples():
    assert largest_stabilizing(parse_class("OX"), 3) == ("T0", "T0")
    assert largest_stabilizing(parse_class("Eq"), 3) == ("Tc", "Omega")
    assert largest_stabilizing(parse_class("Smaj_11 | Refl_11"), 3) == ("Sc", "V1")


def test_adjunction_examples():
    r = constant_adjunction_check("Mc", "Ic", {0}, cap=3)
    assert r.ok and r.extended == "I0"
    r = constant_adjunction_check("Omega", "Ic", set(), cap=3)
    assert r.ok and r.stable == r.total == 5


@pytest.mark.slow
def test_adjunction_sc_both_constants():
    r = constant_adjunction_check("Sc", "Ic", {0, 1}, cap=3)
    assert r.ok
    assert r.total == 1296 and r.stable == 901
