import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pgpoly import (
    DegreeZero,
    FieldMismatch,
    FieldParams,
    FieldTooLarge,
    InvalidParams,
    NotPrime,
    ZeroInverse,
    ff_add,
    ff_inv,
    ff_mul,
    make_field,
)
from pgpoly.ffield import add_idx, is_irreducible, mul_idx

SMALL_FIELDS = [(p, n) for p in (2, 3, 5, 7) for n in range(1, 7) if p ** n <= 64]


def brute_irreducible(modulus, p):
    # no root-free shortcut: reducible iff some monic factor of degree 1..n-1 divides
    n = len(modulus) - 1
    prods = set()
    for d in range(1, n):
        for a in itertools.product(range(p), repeat=d):
            for b in itertools.product(range(p), repeat=n - d):
                fa, fb = list(a) + [1], list(b) + [1]
                out = [0] * (n + 1)
                for i, x in enumerate(fa):
                    for j, y in enumerate(fb):
                        out[i + j] = (out[i + j] + x * y) % p
                prods.add(tuple(out))
    return tuple(modulus) not in prods


@pytest.mark.parametrize("p,n,mod", [(2, 1, (0, 1)), (2, 2, (1, 1, 1)), (3, 2, (1, 0, 1))])
def test_make_field_examples(p, n, mod):
    assert make_field(p, n).modulus == mod


@pytest.mark.parametrize("p,n", [(2, 3), (2, 4), (3, 3), (5, 2), (2, 5)])
def test_modulus_is_lex_least_irreducible(p, n):
    f = make_field(p, n)
    first = next(
        tuple(low) + (1,)
        for low in itertools.product(range(p), repeat=n)
        if brute_irreducible(tuple(low) + (1,), p)
    )
    assert f.modulus == first


def test_make_field_errors():
    with pytest.raises(NotPrime):
        make_field(4, 2)
    with pytest.raises(DegreeZero):
        make_field(2, 0)
    with pytest.raises(FieldTooLarge):
        make_field(2, 17)
    with pytest.raises(InvalidParams):
        FieldParams(2, 2, (0, 0, 1))


def test_add_examples():
    F4, F9 = make_field(2, 2), make_field(3, 2)
    assert ff_add(F4.element(1), F4.element(1)).index == 0
    assert ff_add(F4.element(1), F4.element(2)).index == 3
    assert ff_add(F9.element(1), F9.element(2)).index == 0


def test_mul_and_inv_examples():
    F4, F9 = make_field(2, 2), make_field(3, 2)
    assert ff_mul(F4.element(2), F4.element(2)).index == 3
    for x in F9.elements():
        assert ff_mul(F9.one, x) == x
        assert ff_mul(F9.zero, x) == F9.zero
    assert ff_inv(F4.one) == F4.one
    assert ff_inv(F4.element(2)).index == 3
    assert ff_inv(F9.element(2)).index == 2
    with pytest.raises(ZeroInverse):
        ff_inv(F4.zero)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        ff_add(make_field(2, 2).one, make_field(3, 2).one)


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, n):
    F = make_field(p, n)
    q = F.q
    a = np.arange(q)[:, None, None]
    b = np.arange(q)[None, :, None]
    c = np.arange(q)[None, None, :]
    A = add_idx(F, add_idx(F, a, b), c)
    assert np.array_equal(A, add_idx(F, a, add_idx(F, b, c)))
    M = mul_idx(F, mul_idx(F, a, b), c)
    assert np.array_equal(M, mul_idx(F, a, mul_idx(F, b, c)))
    D = mul_idx(F, a, add_idx(F, b, c))
    assert np.array_equal(D, add_idx(F, mul_idx(F, a, b), mul_idx(F, a, c)))
    table = mul_idx(F, np.arange(q)[:, None], np.arange(q)[None, :])
    assert np.array_equal(table, table.T)
    # every nonzero row of the multiplication table is a permutation, and 1 is the identity
    assert all(sorted(table[x, 1:].tolist()) == list(range(1, q)) for x in range(1, q))
    assert np.array_equal(table[1], np.arange(q))
    for x in range(1, q):
        inv = ff_inv(F.element(x))
        assert ff_mul(F.element(x), inv).index == 1
        assert ff_inv(inv).index == x


@pytest.mark.parametrize("p,n", SMALL_FIELDS)
def test_digit_round_trip(p, n):
    F = make_field(p, n)
    t = np.arange(F.q)
    d = F.to_digits(t)
    assert d.shape == (F.q, n) and d.max() < p
    assert np.array_equal(F.from_digits(d), t)
    assert F.element(F.q - 1).digits == (p - 1,) * n


@pytest.mark.parametrize("p,n", [(2, 3), (3, 2), (5, 1), (2, 5)])
def test_irreducibility_matches_brute_force(p, n):
    for low in itertools.product(range(p), repeat=n):
        mod = tuple(low) + (1,)
        assert is_irreducible(mod, p) == brute_irreducible(mod, p)


def test_json_round_trip():
    F = make_field(3, 3)
    obj = F.to_json()
    assert obj == {"p": 3, "n": 3, "modulus": list(F.modulus)}
    assert FieldParams.from_json(obj) == F


@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_multiplicative_group_order(pn, data):
    F = make_field(*pn)
    x = F.element(data.draw(st.integers(1, F.q - 1)))
    assert (x ** (F.q - 1)).index == 1
    assert x ** -1 == ff_inv(x)
