import math

import pytest
from hypothesis import given, strategies as st

from pgpoly import (
    DegreeMismatch,
    IndexOutOfRange,
    InvalidParams,
    OverlappingCycles,
    Permutation,
    compose,
    conjugate,
    fixed_points,
    from_cycles,
    inverse,
    power,
)
from pgpoly.perm import order, parse_cycles


def perms(max_q=32):
    return st.integers(1, max_q).flatmap(lambda q: st.permutations(range(q)).map(Permutation))


def same_degree(k, max_q=32):
    return st.integers(1, max_q).flatmap(
        lambda q: st.tuples(*[st.permutations(range(q)).map(Permutation)] * k)
    )


def test_compose_examples():
    q = 4
    I = Permutation.identity(q)
    f = parse_cycles(q, "(0 1)(2 3)")
    g = parse_cycles(q, "(0 2)(1 3)")
    assert compose(I, g) == g
    assert compose(f, g) == parse_cycles(q, "(0 3)(1 2)")
    assert compose(f, inverse(f)).is_identity()
    assert compose(f, g).images == tuple(f.images[y] for y in g.images)
    with pytest.raises(DegreeMismatch):
        compose(I, Permutation.identity(3))


def test_power_examples():
    c = parse_cycles(4, "(0 1 2 3)")
    assert power(c, 0).is_identity()
    assert power(c, 2) == parse_cycles(4, "(0 2)(1 3)")
    assert power(c, order(c)).is_identity()
    assert power(c, -1) == inverse(c)


def test_conjugate_examples():
    q = 4
    I = Permutation.identity(q)
    f = parse_cycles(q, "(0 1)(2 3)")
    s = parse_cycles(q, "(0 1)")
    assert conjugate(I, f) == f
    assert conjugate(s, I) == I
    assert conjugate(s, f) == f
    with pytest.raises(DegreeMismatch):
        conjugate(s, Permutation.identity(5))


def test_fixed_points_examples():
    assert fixed_points(Permutation.identity(4)) == {0, 1, 2, 3}
    assert fixed_points(parse_cycles(4, "(0 1)(2 3)")) == set()
    assert fixed_points(parse_cycles(4, "(0 1)")) == {2, 3}


def test_from_cycles_examples():
    assert from_cycles(4, []).is_identity()
    assert from_cycles(4, [[0, 1], [2, 3]]).images == (1, 0, 3, 2)
    assert from_cycles(8, [[0, 2, 4, 6]]).images == (2, 1, 4, 3, 6, 5, 0, 7)
    with pytest.raises(OverlappingCycles):
        from_cycles(4, [[0, 1], [1, 2]])
    with pytest.raises(IndexOutOfRange):
        from_cycles(4, [[0, 4]])


def test_bad_images_rejected():
    with pytest.raises(InvalidParams):
        Permutation([0, 0, 1])
    with pytest.raises(InvalidParams):
        parse_cycles(4, "(0 1) junk")


def test_cycle_string_round_trip():
    f = from_cycles(9, [[0, 3, 6], [1, 4, 7], [2, 5, 8]])
    assert f.cycle_string() == "(0 3 6)(1 4 7)(2 5 8)"
    assert parse_cycles(9, f.cycle_string()) == f
    assert Permutation.identity(3).cycle_string() == "()"


@given(same_degree(3))
def test_compose_associative(fgh):
    f, g, h = fgh
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(perms())
def test_order_two_ways(f):
    o = order(f)
    assert math.factorial(f.degree) % o == 0
    assert power(f, o).is_identity()
    # least positive exponent, by repeated multiplication
    k, acc = 1, f
    while not acc.is_identity():
        acc = compose(acc, f)
        k += 1
    assert k == o


@given(same_degree(2))
def test_conjugation_preserves_cycle_type(sf):
    s, f = sf
    c = conjugate(s, f)
    assert c.cycle_type() == f.cycle_type()
    assert c == compose(compose(s, f), inverse(s))


@given(perms(), st.integers(-50, 50), st.integers(-50, 50))
def test_power_laws(f, a, b):
    assert compose(power(f, a), power(f, b)) == power(f, a + b)
    assert power(f, a) == power(f, a % order(f))
