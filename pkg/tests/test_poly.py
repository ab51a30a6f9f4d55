import numpy as np
import pytest
from hypothesis import given, strategies as st

from pgpoly import (
    BivariatePoly,
    FieldMismatch,
    KlenianParams,
    PermTuple,
    SizeMismatch,
    T31Params,
    eval_poly,
    eval_table,
    interpolate_bivariate,
    is_lpp_poly,
    klenian_group,
    make_field,
    t31_group,
    tuple_to_square,
)
from pgpoly.lpp import is_latin

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)]


def product_lagrange(F, table):
    """Scalar oracle: sum over points of table value times prod_{b != a}(X - b)/(a - b), per variable."""
    q = F.q
    els = F.elements()

    def basis(a):
        # coefficients (low degree first) of prod_{b != a} (X - b) / (a - b)
        coeffs = [F.one]
        denom = F.one
        for b in els:
            if b == a:
                continue
            nxt = [F.zero] * (len(coeffs) + 1)
            for k, c in enumerate(coeffs):
                nxt[k + 1] = nxt[k + 1] + c
                nxt[k] = nxt[k] - c * b
            coeffs = nxt
            denom = denom * (a - b)
        inv = denom ** -1
        return [c * inv for c in coeffs]

    L = [basis(a) for a in els]
    C = [[F.zero] * q for _ in range(q)]
    for x in range(q):
        for y in range(q):
            v = F.element(int(table[x][y]))
            if v == F.zero:
                continue
            for i in range(q):
                for j in range(q):
                    C[i][j] = C[i][j] + v * L[x][i] * L[y][j]
    return [[c.index for c in row] for row in C]


def test_interpolation_examples():
    F2 = make_field(2, 1)
    P = interpolate_bivariate(F2, [[0, 1], [1, 0]])
    assert P.terms() == {(1, 0): 1, (0, 1): 1} and str(P) == "X1 + X2"
    F4 = make_field(2, 2)
    sq = tuple_to_square(PermTuple.from_group(t31_group(T31Params(2, 2, 1))))
    P = interpolate_bivariate(F4, sq.cells)
    assert str(P) == "X1 + X2"
    for x in F4.elements():
        for y in F4.elements():
            assert eval_poly(P, x, y) == x + y
    assert interpolate_bivariate(F4, np.zeros((4, 4), dtype=int)) == BivariatePoly.zero(F4)


def test_eval_examples():
    F4 = make_field(2, 2)
    assert eval_poly(BivariatePoly.zero(F4), F4.element(3), F4.element(2)) == F4.zero
    X1pX2 = BivariatePoly.from_terms(F4, {(1, 0): 1, (0, 1): 1})
    assert eval_poly(X1pX2, F4.element(1), F4.element(2)).index == 3
    X1X2 = BivariatePoly.from_terms(F4, {(1, 1): 1})
    assert eval_poly(X1X2, F4.element(2), F4.element(2)).index == 3
    with pytest.raises(FieldMismatch):
        eval_poly(X1X2, make_field(3, 2).one, F4.one)


def test_is_lpp_examples():
    F4 = make_field(2, 2)
    assert is_lpp_poly(BivariatePoly.from_terms(F4, {(1, 0): 1, (0, 1): 1}))
    assert not is_lpp_poly(BivariatePoly.from_terms(F4, {(0, 1): 1}))
    assert not is_lpp_poly(BivariatePoly.from_terms(F4, {(1, 1): 1}))
    for pn in FIELDS:
        F = make_field(*pn)
        assert is_lpp_poly(BivariatePoly.from_terms(F, {(1, 0): 1, (0, 1): 1}))


def test_shape_checks():
    F = make_field(3, 1)
    with pytest.raises(SizeMismatch):
        interpolate_bivariate(F, [[0, 1], [1, 0]])
    with pytest.raises(SizeMismatch):
        interpolate_bivariate(F, [[0, 1, 3]] * 3)
    with pytest.raises(SizeMismatch):
        BivariatePoly(F, np.zeros((2, 2)))


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3)])
def test_matches_product_form_oracle(pn):
    F = make_field(*pn)
    rng = np.random.default_rng(sum(pn))
    for _ in range(3):
        T = rng.integers(0, F.q, size=(F.q, F.q))
        assert interpolate_bivariate(F, T).coeffs.tolist() == product_lagrange(F, T)


@given(st.sampled_from(FIELDS), st.data())
def test_round_trip_random_poly(pn, data):
    F = make_field(*pn)
    q = F.q
    flat = data.draw(st.lists(st.integers(0, q - 1), min_size=q * q, max_size=q * q))
    P = BivariatePoly(F, np.array(flat).reshape(q, q))
    V = eval_table(P)
    assert interpolate_bivariate(F, V) == P
    x, y = data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1))
    assert eval_poly(P, F.element(x), F.element(y)).index == V[x, y]


@given(st.sampled_from(FIELDS[:6]), st.data())
def test_interpolant_reproduces_table(pn, data):
    F = make_field(*pn)
    q = F.q
    flat = data.draw(st.lists(st.integers(0, q - 1), min_size=q * q, max_size=q * q))
    T = np.array(flat).reshape(q, q)
    assert np.array_equal(eval_table(interpolate_bivariate(F, T)), T)


def _constructed_squares():
    for p, n in [(2, 2), (3, 2), (2, 3), (2, 4)]:
        for d in (1, 2):
            yield (p, n), tuple_to_square(PermTuple.from_group(t31_group(T31Params(p, n, d)))).cells
        for e in range(n):
            yield (p, n), tuple_to_square(PermTuple.from_group(klenian_group(KlenianParams(p, n, e)))).cells


@pytest.mark.parametrize("pn,cells", list(_constructed_squares()))
def test_lpp_iff_latin_on_constructed(pn, cells):
    F = make_field(*pn)
    P = interpolate_bivariate(F, cells)
    assert is_lpp_poly(P) == is_latin(cells) is True
    # break Latinness by copying a row; the interpolant must stop being an LPP
    broken = cells.copy()
    broken[1] = broken[0]
    assert is_lpp_poly(interpolate_bivariate(F, broken)) == is_latin(broken) is False


def test_json_round_trip():
    F = make_field(3, 2)
    P = BivariatePoly.from_terms(F, {(2, 1): 5, (0, 0): 7})
    obj = P.to_json()
    assert set(obj) == {"field", "coeffs"}
    assert BivariatePoly.from_json(obj) == P
