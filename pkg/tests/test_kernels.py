import numpy as np
import pytest

from pgpoly import KlenianParams, LatinSquare, T31Params, kernels, klenian_group, t31_group, tuple_to_square
from pgpoly.counting import conjugation_scan, normalizer_bruteforce, nset_bruteforce
from pgpoly.lpp import PermTuple, mate_search


def test_backend_selection(monkeypatch):
    kernels.set_backend(None)
    monkeypatch.setenv(kernels.ENV_VAR, "numpy")
    assert kernels.get_backend() == "numpy"
    monkeypatch.setenv(kernels.ENV_VAR, "numba")
    assert kernels.get_backend() == ("numba" if kernels.HAVE_NUMBA else "numpy")
    kernels.set_backend("numpy")
    assert kernels.get_backend() == "numpy"
    kernels.set_backend(None)
    monkeypatch.setenv(kernels.ENV_VAR, "fortran")
    with pytest.raises(ValueError):
        kernels.get_backend()
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_lex_permutations():
    import itertools

    for k in range(6):
        assert kernels.lex_permutations(k).tolist() == [list(p) for p in itertools.permutations(range(k))]


def test_shard_order():
    P = kernels.shard_permutations(5, 2)
    assert (P[:, 0] == 2).all() and len(P) == 24
    assert P.tolist() == sorted(P.tolist())


def test_encode():
    assert kernels.encode_images([1, 0, 3, 2], 4) == 1 + 0 * 4 + 3 * 16 + 2 * 64


GROUPS = [t31_group(T31Params(*c)) for c in [(2, 2, 1), (2, 2, 2), (2, 3, 1), (2, 3, 2), (3, 2, 1), (3, 2, 2)]] + [
    klenian_group(KlenianParams(*c)) for c in [(2, 2, 1), (2, 3, 1), (3, 2, 1)]
]


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: f"{g.family}-{g.params.to_json()}")
def test_scan_parity(g):
    out = {}
    for be in kernels.BACKENDS:
        kernels.set_backend(be)
        try:
            rng = np.random.default_rng(g.q)
            targets = {k: int(rng.integers(g.q)) for k in range(len(g.gens))}
            out[be] = (
                normalizer_bruteforce(g),
                nset_bruteforce(g, targets),
                [kernels.scan_shard(g.gens_array(), np.array([[0]] * len(g.gens)), np.ones(len(g.gens), dtype=np.int64), f) for f in range(g.q)],
            )
        finally:
            kernels.set_backend(None)
    assert out["numba"] == out["numpy"]


def test_scan_counts_whole_group():
    # every h maps g into the set of all permutations of the same shape; allowing every
    # image code of S_4 must count all 24 permutations
    import itertools

    q = 4
    codes = sorted(kernels.encode_images(p, q) for p in itertools.permutations(range(q)))
    gens = np.array([[1, 0, 3, 2]])
    for be in kernels.BACKENDS:
        kernels.set_backend(be)
        try:
            assert conjugation_scan(gens, [codes]) == 24
        finally:
            kernels.set_backend(None)


@pytest.mark.parametrize("c", [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 2)])
def test_mate_parity(c):
    s = tuple_to_square(PermTuple.from_group(t31_group(T31Params(*c))))
    res = {}
    for be in kernels.BACKENDS:
        kernels.set_backend(be)
        try:
            status, grid, steps = kernels.mate_backtrack(s.cells, 10 ** 8)
            res[be] = (status, grid.tolist(), steps)
        finally:
            kernels.set_backend(None)
    assert res["numba"] == res["numpy"]


def test_mate_parity_random_squares():
    rng = np.random.default_rng(3)
    base = tuple_to_square(PermTuple.from_group(klenian_group(KlenianParams(2, 3, 1)))).cells
    for _ in range(4):
        s = LatinSquare(base[rng.permutation(8)][:, rng.permutation(8)])
        got = []
        for be in kernels.BACKENDS:
            kernels.set_backend(be)
            try:
                got.append(mate_search(s))
            finally:
                kernels.set_backend(None)
        assert got[0] == got[1]
