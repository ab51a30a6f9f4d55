"""Bivariate polynomials over GF(q) with degree < q in each variable.

Coefficients are stored as a q x q grid of field-element indices:
``coeffs[i][j]`` multiplies X1^i X2^j.  The coefficient values depend on the
labeling c_t <-> field element fixed in :mod:`pgpoly.ffield`.
"""
from __future__ import annotations

import numpy as np

from .errors import FieldMismatch, SizeMismatch
from .ffield import FieldElement, FieldParams, add_idx, mul_idx, pow_idx, sub_idx
from .lpp import is_latin


class BivariatePoly:
    __slots__ = ("field", "_coeffs")

    def __init__(self, field: FieldParams, coeffs):
        C = np.array(coeffs, dtype=np.int64)
        q = field.q
        if C.shape != (q, q):
            raise SizeMismatch(f"coefficient grid must be {q}x{q}, got {C.shape}")
        if C.size and (C.min() < 0 or C.max() >= q):
            raise SizeMismatch("coefficient indices must lie in 0..q-1")
        C.setflags(write=False)
        self.field = field
        self._coeffs = C

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @classmethod
    def zero(cls, field: FieldParams) -> "BivariatePoly":
        return cls(field, np.zeros((field.q, field.q), dtype=np.int64))

    @classmethod
    def from_terms(cls, field: FieldParams, terms: dict) -> "BivariatePoly":
        """Build from ``{(i, j): coefficient_index}``."""
        C = np.zeros((field.q, field.q), dtype=np.int64)
        for (i, j), c in terms.items():
            C[i, j] = c
        return cls(field, C)

    def terms(self) -> dict:
        return {(int(i), int(j)): int(self._coeffs[i, j]) for i, j in zip(*np.nonzero(self._coeffs))}

    def __eq__(self, other):
        return (
            isinstance(other, BivariatePoly)
            and self.field == other.field
            and np.array_equal(self._coeffs, other._coeffs)
        )

    def __repr__(self):
        return f"BivariatePoly({self})"

    def __str__(self):
        parts = []
        for (i, j), c in sorted(self.terms().items(), reverse=True):
            mono = "*".join(m for m in (_mono("X1", i), _mono("X2", j)) if m)
            if not mono:
                parts.append(f"c_{c}")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"c_{c}*{mono}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "coeffs": self._coeffs.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "BivariatePoly":
        return cls(FieldParams.from_json(obj["field"]), obj["coeffs"])


def _mono(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


def field_matmul(field: FieldParams, A, B) -> np.ndarray:
    """Matrix product over GF(q) of index matrices."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    prods = mul_idx(field, A[:, :, None], B[None, :, :])
    digits = field.to_digits(prods).sum(axis=1) % field.p
    return field.from_digits(digits)


def power_matrix(field: FieldParams) -> np.ndarray:
    """``M[x, i] = c_x ** i`` with 0^0 = 1."""
    q = field.q
    M = np.zeros((q, q), dtype=np.int64)
    M[:, 0] = 1
    x = np.arange(q, dtype=np.int64)
    for i in range(1, q):
        M[:, i] = mul_idx(field, M[:, i - 1], x)
    return M


def lagrange_basis(field: FieldParams) -> np.ndarray:
    """``L[a, i]``: coefficient of X^i in the indicator polynomial of c_a.

    The indicator is 1 - (X - a)^(q-1), and (X - a)^(q-1) expands to
    sum_i a^(q-1-i) X^i in characteristic p.
    """
    q = field.q
    M = power_matrix(field)
    L = np.empty((q, q), dtype=np.int64)
    for i in range(q):
        L[:, i] = M[:, q - 1 - i]
    L = sub_idx(field, np.zeros_like(L), L)
    L[:, 0] = add_idx(field, L[:, 0], 1)
    return L


def interpolate_bivariate(field: FieldParams, table) -> BivariatePoly:
    """Unique P with P(c_x, c_y) = c_{table[x][y]} for all x, y."""
    T = np.asarray(table, dtype=np.int64)
    q = field.q
    if T.shape != (q, q):
        raise SizeMismatch(f"table must be {q}x{q}, got {T.shape}")
    if T.size and (T.min() < 0 or T.max() >= q):
        raise SizeMismatch("table entries must lie in 0..q-1")
    L = lagrange_basis(field)
    return BivariatePoly(field, field_matmul(field, field_matmul(field, L.T, T), L))


def eval_poly(P: BivariatePoly, x: FieldElement, y: FieldElement) -> FieldElement:
    """Horner in X1 over Horner evaluations in X2."""
    f = P.field
    if x.field != f or y.field != f:
        raise FieldMismatch("evaluation point is not in the polynomial's field")
    C = P.coeffs
    q = f.q
    acc = 0
    for i in range(q - 1, -1, -1):
        inner = 0
        for j in range(q - 1, -1, -1):
            inner = int(add_idx(f, mul_idx(f, inner, y.index), C[i, j]))
        acc = int(add_idx(f, mul_idx(f, acc, x.index), inner))
    return FieldElement(f, acc)


def eval_table(P: BivariatePoly) -> np.ndarray:
    """Index table ``V[x, y]`` of P over all of GF(q)^2."""
    M = power_matrix(P.field)
    return field_matmul(P.field, field_matmul(P.field, M, P.coeffs), M.T)


def is_lpp_poly(P: BivariatePoly) -> bool:
    """True when every row and column section of P permutes GF(q)."""
    return is_latin(eval_table(P))
