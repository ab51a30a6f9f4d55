"""Arithmetic in GF(p^n) over the power basis of a fixed irreducible modulus.

Element ``c_t`` is the field element whose coordinate vector in the basis
1, X, ..., X^(n-1) is the little-endian base-p expansion of ``t``.  All group
constructions act on these indices by digit arithmetic, and interpolated
coefficients are expressed in the same labeling.

Scalar helpers (``ff_add``, ``ff_mul``, ...) work on :class:`FieldElement`;
the ``*_idx`` variants accept integer index arrays and are vectorized.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DegreeZero, FieldMismatch, FieldTooLarge, InvalidParams, NotPrime, ZeroInverse

MAX_ORDER = 2 ** 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _poly_mod(num: list[int], den: list[int], p: int) -> list[int]:
    # little-endian coefficient lists, den monic
    r = list(num)
    d = len(den) - 1
    for k in range(len(r) - 1, d - 1, -1):
        c = r[k] % p
        if c:
            for i in range(d + 1):
                r[k - d + i] = (r[k - d + i] - c * den[i]) % p
    return [x % p for x in r[:d]]


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..n//2."""
    n = len(modulus) - 1
    if n < 1 or modulus[-1] != 1:
        return False
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(list(modulus), list(low) + [1], p)):
                return False
    return True


@dataclass(frozen=True)
class FieldParams:
    p: int
    n: int
    modulus: tuple

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if not is_prime(self.p):
            raise NotPrime(f"p={self.p} is not prime")
        if self.n < 1:
            raise DegreeZero("field degree n must be >= 1")
        if self.p ** self.n > MAX_ORDER:
            raise FieldTooLarge(f"q = {self.p}^{self.n} exceeds the 2^16 cap")
        if len(self.modulus) != self.n + 1 or any(not 0 <= c < self.p for c in self.modulus):
            raise InvalidParams(f"modulus must have {self.n + 1} digits in 0..{self.p - 1}")
        if not is_irreducible(self.modulus, self.p):
            raise InvalidParams(f"modulus {self.modulus} is not monic irreducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.n

    @cached_property
    def _radix(self) -> np.ndarray:
        return self.p ** np.arange(self.n, dtype=np.int64)

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, index)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, t) for t in range(self.q)]

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def to_digits(self, index):
        """Little-endian base-p digits of ``index`` (scalar or array), last axis of length n."""
        idx = np.asarray(index, dtype=np.int64)
        return (idx[..., None] // self._radix) % self.p

    def from_digits(self, digits):
        return np.asarray(digits, dtype=np.int64) @ self._radix

    def poly_str(self) -> str:
        terms = []
        for k in range(self.n, -1, -1):
            c = self.modulus[k]
            if not c:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            coef = str(c) if (c != 1 or k == 0) else ""
            terms.append(coef + mono)
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldParams":
        return cls(int(obj["p"]), int(obj["n"]), tuple(obj["modulus"]))


def make_field(p: int, n: int) -> FieldParams:
    """Field of order p^n whose modulus is the lexicographically least monic irreducible.

    Candidates are ordered by their coefficient lists read from the constant
    term upwards.
    """
    if not is_prime(p):
        raise NotPrime(f"p={p} is not prime")
    if n < 1:
        raise DegreeZero("field degree n must be >= 1")
    if p ** n > MAX_ORDER:
        raise FieldTooLarge(f"q = {p}^{n} exceeds the 2^16 cap")
    for low in itertools.product(range(p), repeat=n):
        modulus = tuple(low) + (1,)
        if is_irreducible(modulus, p):
            return FieldParams(p, n, modulus)
    raise AssertionError("unreachable: an irreducible of every degree exists")


@dataclass(frozen=True)
class FieldElement:
    field: FieldParams
    index: int

    def __post_init__(self):
        object.__setattr__(self, "index", int(self.index))
        if not 0 <= self.index < self.field.q:
            raise InvalidParams(f"index {self.index} outside 0..{self.field.q - 1}")

    @property
    def digits(self) -> tuple:
        return tuple(int(d) for d in self.field.to_digits(self.index))

    def __add__(self, other):
        return ff_add(self, other)

    def __sub__(self, other):
        return ff_sub(self, other)

    def __neg__(self):
        return FieldElement(self.field, int(neg_idx(self.field, self.index)))

    def __mul__(self, other):
        return ff_mul(self, other)

    def __pow__(self, k: int):
        return ff_pow(self, k)

    def __repr__(self):
        return f"c_{self.index}"


# -- vectorized kernels on index arrays ---------------------------------

def add_idx(field: FieldParams, a, b):
    return field.from_digits((field.to_digits(a) + field.to_digits(b)) % field.p)


def neg_idx(field: FieldParams, a):
    return field.from_digits((-field.to_digits(a)) % field.p)


def sub_idx(field: FieldParams, a, b):
    return field.from_digits((field.to_digits(a) - field.to_digits(b)) % field.p)


def mul_idx(field: FieldParams, a, b):
    p, n = field.p, field.n
    da, db = np.broadcast_arrays(field.to_digits(a), field.to_digits(b))
    prod = np.zeros(da.shape[:-1] + (2 * n - 1,), dtype=np.int64)
    for i in range(n):
        prod[..., i:i + n] += da[..., i:i + 1] * db
    prod %= p
    mod = np.asarray(field.modulus, dtype=np.int64)
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[..., k:k + 1]
        prod[..., k - n:k + 1] = (prod[..., k - n:k + 1] - c * mod) % p
    return field.from_digits(prod[..., :n])


def pow_idx(field: FieldParams, a, k: int):
    result = np.ones_like(np.asarray(a, dtype=np.int64))
    base = np.asarray(a, dtype=np.int64)
    while k > 0:
        if k & 1:
            result = mul_idx(field, result, base)
        base = mul_idx(field, base, base)
        k >>= 1
    return result


# -- scalar API ------------------------------------------------------------

def _check_same(a: FieldElement, b: FieldElement) -> FieldParams:
    if a.field != b.field:
        raise FieldMismatch("operands belong to different fields")
    return a.field


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same(a, b)
    return FieldElement(f, int(add_idx(f, a.index, b.index)))


def ff_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same(a, b)
    return FieldElement(f, int(sub_idx(f, a.index, b.index)))


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _check_same(a, b)
    return FieldElement(f, int(mul_idx(f, a.index, b.index)))


def ff_pow(a: FieldElement, k: int) -> FieldElement:
    if k < 0:
        return ff_pow(ff_inv(a), -k)
    return FieldElement(a.field, int(pow_idx(a.field, a.index, k)))


def ff_inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse via a^(q-2)."""
    if a.index == 0:
        raise ZeroInverse("c_0 has no inverse")
    return FieldElement(a.field, int(pow_idx(a.field, a.index, a.field.q - 2)))
