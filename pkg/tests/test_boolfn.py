import pytest
from hypothesis import given
from hypothesis import strategies as st

from clonoids.boolfn import (
    AND, DISC, ID, IFF, MAJ, NOT, OR, OR_AND, XOR, XOR3, ArgMap, BoolFn, InputShapeError,
    alternation, compose, constant, dual, essential_arity, eval_fn, lambda_fn, minor, negate,
    parse_fn, projection, range2_signature, star, threshold,
)
from conftest import boolfns


def test_eval_examples():
    assert eval_fn(OR, (0, 1)) == 1
    assert eval_fn(projection(1, 3), (0, 1, 1)) == 0
    assert eval_fn(OR_AND, (1, 0, 0)) == 1


def test_eval_rejects_wrong_length():
    with pytest.raises(InputShapeError):
        eval_fn(AND, (1,))


def test_hex_round_trip_and_convention():
    assert OR.to_hex() == "2:E"
    assert parse_fn("2:E") == OR
    assert parse_fn("L0101") == XOR3
    assert BoolFn.from_hex("3:96") == XOR3
    with pytest.raises(InputShapeError):
        BoolFn.from_hex("2:1FF")
    with pytest.raises(InputShapeError):
        BoolFn.from_hex("nonsense")


def test_minor_examples():
    assert minor(XOR3, ArgMap((1, 2, 2), 2)) == projection(1, 2)
    assert minor(AND, ArgMap((1, 1), 1)) == ID
    assert minor(MAJ, ArgMap((1, 2, 3), 3)) == MAJ


def test_compose_examples():
    assert compose(OR, [lambda_fn("01000"), lambda_fn("00010")]) == lambda_fn("01010")
    assert compose(AND, [lambda_fn("11101"), lambda_fn("10111")]) == lambda_fn("10101")
    assert compose(MAJ, [projection(i, 3) for i in (1, 2, 3)]) == MAJ
    with pytest.raises(InputShapeError):
        compose(AND, [ID, AND])


def test_star_examples():
    assert star(lambda_fn("101"), XOR3) == lambda_fn("10101")
    assert star(ID, MAJ) == MAJ
    r = star(lambda_fn("0101"), constant(0))
    # first argument is fictitious; the rest is lambda_010
    v = r.values()
    assert v[:4] == v[4:]
    assert BoolFn.from_values(v[:4]) == lambda_fn("010")


def test_dual_and_negate_examples():
    assert dual(OR) == AND
    assert dual(MAJ) == MAJ
    assert negate(constant(0)) == constant(1)


def test_essential_arity_examples():
    assert essential_arity(projection(1, 3)) == 1
    assert essential_arity(XOR3) == 3
    assert essential_arity(constant(1, 2)) == 0


def test_alternation_examples():
    assert alternation(lambda_fn("0101"))[0] == 3
    assert alternation(lambda_fn("10101"))[0] == 4
    for a in (0, 1):
        for n in (1, 2, 3):
            assert alternation(constant(a, n))[0] == 0


def test_lambda_examples():
    assert lambda_fn("0101") == XOR3
    assert lambda_fn("00") == constant(0, 1)
    assert lambda_fn("101") == IFF
    with pytest.raises(InputShapeError):
        lambda_fn("")


def test_range2_examples():
    assert range2_signature(constant(1, 2)) == (frozenset({"1"}), 1, 1)
    assert range2_signature(NOT) == (frozenset({"01"}), 1, 0)
    assert range2_signature(AND) == (frozenset({"0", "01"}), 0, 1)


def test_threshold_is_at_least_k():
    assert threshold(2, 3) == MAJ
    assert threshold(1, 2) == OR and threshold(2, 2) == AND


def test_discriminator_and_majority_identities():
    for x in (0, 1):
        for y in (0, 1):
            assert DISC(x, x, y) == y and DISC(x, y, y) == x or DISC(x, y, y) == x
            assert MAJ(x, x, y) == x and MAJ(x, y, x) == x and MAJ(y, x, x) == x


def _argmaps(src, tgt):
    return st.lists(st.integers(1, tgt), min_size=src, max_size=src).map(
        lambda im: ArgMap(tuple(im), tgt))


@given(boolfns(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_minor_functoriality(g, m, k, data):
    s = data.draw(_argmaps(g.arity, m))
    t = data.draw(_argmaps(m, k))
    assert minor(minor(g, s), t) == minor(g, s.then(t))


@given(boolfns(1, 3), st.integers(1, 3), st.data())
def test_compose_with_projections_is_minor(f, m, data):
    s = data.draw(_argmaps(f.arity, m))
    assert compose(f, [projection(i, m) for i in s.images]) == minor(f, s)


@given(boolfns(1, 4))
def test_dual_negate_involutions(f):
    assert dual(dual(f)) == f
    assert negate(negate(f)) == f
    flipped = [compose(NOT, [projection(i, f.arity)]) for i in range(1, f.arity + 1)]
    assert dual(f) == negate(compose(f, flipped))


@given(boolfns(1, 4))
def test_alt_zero_iff_constant_and_monotone_alt_one(f):
    from clonoids.classes import NAMED, satisfies
    alt = alternation(f)[0]
    const = f.table in (0, (1 << (1 << f.arity)) - 1)
    assert (alt == 0) == const
    mono = satisfies(f, NAMED["M"])
    assert (mono and not const) == (alt == 1 and mono)
    if mono and not const:
        assert alt == 1


@given(st.integers(1, 6).flatmap(lambda m: st.tuples(
    st.lists(st.integers(0, 1), min_size=m + 1, max_size=m + 1),
    st.lists(st.integers(0, 1), min_size=m + 1, max_size=m + 1))))
def test_lambda_pointwise_join_meet(uv):
    u, v = uv
    join = [a | b for a, b in zip(u, v)]
    meet = [a & b for a, b in zip(u, v)]
    assert compose(OR, [lambda_fn(u), lambda_fn(v)]) == lambda_fn(join)
    assert compose(AND, [lambda_fn(u), lambda_fn(v)]) == lambda_fn(meet)


@given(boolfns(1, 3))
def test_depth_map_monotone(f):
    _, d = alternation(f)
    n = f.arity
    for x in range(1 << n):
        for j in range(n):
            if not x & (1 << j):
                assert d[x] <= d[x | (1 << j)]
