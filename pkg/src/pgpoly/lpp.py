"""Permutation tuples, Latin squares, and companion construction.

A bivariate local permutation polynomial f is identified with the tuple
``(beta_0, ..., beta_{q-1})`` where ``f(c_x, c_{beta_i(x)}) = c_i``, and with
the Latin square ``cells[x][y] = i`` whenever ``f(c_x, c_y) = c_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import (
    BudgetExceeded,
    DegreeMismatch,
    NotAPermTuple,
    NotLatin,
    NotSimpleIntersection,
    SizeMismatch,
    UnsupportedCase,
)
from .groups import OrderedGroup, T31Params, mixed_radix_digits, t31_generators
from .perm import Permutation, compose, power

DEFAULT_MATE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class PermTuple:
    q: int
    betas: tuple

    def __post_init__(self):
        object.__setattr__(self, "betas", tuple(self.betas))

    @classmethod
    def from_group(cls, g: OrderedGroup) -> "PermTuple":
        return cls(g.q, g.elements)

    def __len__(self):
        return len(self.betas)

    def __getitem__(self, i: int) -> Permutation:
        return self.betas[i]

    def is_valid(self) -> bool:
        """True when every beta_i beta_j^-1 (i != j) is fixed-point-free."""
        if len(self.betas) != self.q or any(b.degree != self.q for b in self.betas):
            return False
        # beta_i beta_j^-1 fixes z  <=>  beta_i(x) == beta_j(x) for x = beta_j^-1(z)
        B = np.array([b.images for b in self.betas], dtype=np.int64).reshape(self.q, self.q)
        return all(len(set(B[:, x].tolist())) == self.q for x in range(self.q))


def is_latin(cells) -> bool:
    A = np.asarray(cells)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        return False
    q = A.shape[0]
    if q == 0:
        return True
    target = np.arange(q)
    return bool(
        np.array_equal(np.sort(A, axis=1), np.broadcast_to(target, A.shape))
        and np.array_equal(np.sort(A, axis=0), np.broadcast_to(target[:, None], A.shape))
    )


class LatinSquare:
    """Immutable q x q Latin square over symbols 0..q-1."""

    __slots__ = ("_cells",)

    def __init__(self, cells, check=True):
        A = np.array(cells, dtype=np.int64)
        if A.size == 0:
            A = A.reshape(0, 0)
        if check and not is_latin(A):
            raise NotLatin("grid is not a Latin square")
        A.setflags(write=False)
        self._cells = A

    @property
    def q(self) -> int:
        return self._cells.shape[0]

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    def rows(self) -> list[list[int]]:
        return self._cells.tolist()

    def __getitem__(self, xy):
        return self._cells[xy]

    def __eq__(self, other):
        return isinstance(other, LatinSquare) and np.array_equal(self._cells, other._cells)

    def __hash__(self):
        return hash(self._cells.tobytes())

    def __repr__(self):
        return f"LatinSquare({self.rows()})"

    def to_json(self) -> dict:
        return {"q": self.q, "cells": self.rows()}

    @classmethod
    def from_json(cls, obj: dict) -> "LatinSquare":
        sq = cls(obj["cells"])
        if sq.q != int(obj["q"]):
            raise SizeMismatch(f"declared q={obj['q']} but grid has {sq.q} rows")
        return sq


def tuple_to_square(t: PermTuple) -> LatinSquare:
    """Write symbol i at every cell (x, beta_i(x))."""
    q = t.q
    if len(t.betas) != q or any(b.degree != q for b in t.betas):
        raise NotAPermTuple(f"expected {q} permutations of degree {q}")
    cells = np.full((q, q), -1, dtype=np.int64)
    for i, b in enumerate(t.betas):
        for x, y in enumerate(b.images):
            if cells[x, y] != -1:
                raise NotAPermTuple(
                    f"beta_{cells[x, y]} and beta_{i} agree at x={x}; their quotient has a fixed point"
                )
            cells[x, y] = i
    return LatinSquare(cells, check=False)


def square_to_tuple(s) -> PermTuple:
    """Inverse of :func:`tuple_to_square`: beta_i(x) is the column of symbol i in row x."""
    A = s.cells if isinstance(s, LatinSquare) else np.asarray(s, dtype=np.int64)
    if not is_latin(A):
        raise NotLatin("grid is not a Latin square")
    q = A.shape[0]
    cols = np.argsort(A, axis=1)  # cols[x, i] = y with A[x, y] == i
    return PermTuple(q, [Permutation(cols[:, i], check=False) for i in range(q)])


def are_orthogonal(s1: LatinSquare, s2: LatinSquare) -> bool:
    if s1.q != s2.q:
        raise SizeMismatch(f"orders {s1.q} and {s2.q} differ")
    q = s1.q
    keys = s1.cells.ravel() * q + s2.cells.ravel()
    return len(np.unique(keys)) == q * q


def intersects_simply(h: Permutation, b: Permutation) -> bool:
    if h.degree != b.degree:
        raise DegreeMismatch(f"degrees {h.degree} and {b.degree} differ")
    return sum(1 for u, v in zip(h.images, b.images) if u == v) == 1


def intersects_lpp_simply(h: Permutation, t: PermTuple) -> bool:
    return all(intersects_simply(h, b) for b in t.betas)


def companion_tuple(t: PermTuple, h: Permutation) -> PermTuple:
    """``(h beta_0, ..., h beta_{q-1})``, after checking h meets every beta_i exactly once."""
    for i, b in enumerate(t.betas):
        if not intersects_simply(h, b):
            raise NotSimpleIntersection(i)
    return PermTuple(t.q, [compose(h, b) for b in t.betas])


def transform_tuple(t: PermTuple, sigma: Permutation, lam: Permutation) -> PermTuple:
    """The equivalent tuple ``(sigma beta_i lambda)_i``."""
    return PermTuple(t.q, [compose(compose(sigma, b), lam) for b in t.betas])


def companion_supported(params: T31Params) -> bool:
    return params.p % 2 == 1 or params.delta == 1 or params.n >= 5


def companion_exponents(params: T31Params, digits: Sequence[int]) -> list[int]:
    """Exponents of a_0..a_{n-delta} in the word applied to c_t, given t's digits."""
    p, n, delta = params.p, params.n, params.delta
    t = list(digits)
    if p % 2 == 1:
        return t
    if delta == 1:
        return [t[n - 1], t[0] + t[n - 1]] + [t[k - 1] for k in range(2, n)]
    t00, t01 = t[0] % 2, t[0] // 2
    s1 = sum(t[2 * k - 1] + t[2 * k + 1] for k in range(1, (n - 3) // 2 + 1)) % 2
    s2 = sum(t[2 * k] + t[2 * k + 2] for k in range(1, (n - 4) // 2 + 1)) % 2
    return [t[n - 2] + 2 * t[n - 3], t00 + s1 - t[1], t01 + s2 - t[2]] + [t[k - 2] for k in range(3, n - 1)]


def companion_h(params: T31Params) -> Permutation:
    """Permutation h meeting every element of the t31 group exactly once.

    For p = 2 and delta = 2 the construction needs n >= 5; smaller n raises
    :class:`UnsupportedCase` (use :func:`mate_search` instead).
    """
    if not companion_supported(params):
        raise UnsupportedCase(
            f"no closed-form companion for p=2, delta=2, n={params.n}: the construction requires n >= 5; "
            "use mate_search (CLI: --mate-search) as a fallback"
        )
    bounds = params.bounds
    gens = t31_generators(params)
    powers = [[power(g, k).images for k in range(b)] for g, b in zip(gens, bounds)]
    images = []
    for t in range(params.q):
        w = companion_exponents(params, mixed_radix_digits(t, bounds))
        x = t
        for k in range(len(gens) - 1, -1, -1):
            x = powers[k][w[k] % bounds[k]][x]
        images.append(x)
    return Permutation(images)


def mate_search(s: LatinSquare, budget: int = DEFAULT_MATE_BUDGET) -> Optional[LatinSquare]:
    """Lexicographically first orthogonal mate of ``s`` by cell-by-cell backtracking.

    Returns ``None`` when the search space is exhausted (no mate exists) and
    raises :class:`BudgetExceeded` when ``budget`` placements run out first.
    """
    if not isinstance(s, LatinSquare):
        s = LatinSquare(s)
    if s.q == 0:
        return LatinSquare(np.zeros((0, 0), dtype=np.int64), check=False)
    status, grid, steps = kernels.mate_backtrack(s.cells, budget)
    if status == kernels.MATE_BUDGET:
        raise BudgetExceeded(budget)
    if status == kernels.MATE_EXHAUSTED:
        return None
    return LatinSquare(grid, check=False)
