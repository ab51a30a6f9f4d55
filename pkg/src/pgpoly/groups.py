"""Generator families for fixed-point-free abelian subgroups of S_q of order q.

Two families are built here:

* the ``t31`` family, generated by ``a_0`` (cycles of length p^delta on
  consecutive blocks) and ``a_1 .. a_{n-delta}`` (p-cycles with stride
  p^(i+delta-1)); its elements act on c_t by adding mixed-radix digits;
* the e-Klenian family, generated by ``a`` (l-cycles on consecutive blocks,
  l = p^e) and ``b`` (q/l-cycles with stride l).

Group elements are kept in mixed-radix order of their exponent tuples, so
``elements[t]`` is ``prod gens[k] ** digit_k(t)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateGroup, InvalidParams, NonCommutingGenerators, NotAbelian
from .ffield import MAX_ORDER, is_prime
from .perm import Permutation, compose, from_cycles, power


@dataclass(frozen=True)
class T31Params:
    p: int
    n: int
    delta: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidParams(f"p={self.p} is not prime")
        if self.delta not in (1, 2):
            raise InvalidParams("delta must be 1 or 2")
        if self.n < 2 or self.n < self.delta:
            raise InvalidParams("need n >= 2 and n >= delta")
        if self.p ** self.n > MAX_ORDER:
            raise InvalidParams(f"q = {self.p}^{self.n} exceeds the 2^16 cap")

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def bounds(self) -> tuple:
        return (self.p ** self.delta,) + (self.p,) * (self.n - self.delta)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "delta": self.delta}


@dataclass(frozen=True)
class KlenianParams:
    p: int
    n: int
    e: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidParams(f"p={self.p} is not prime")
        if self.n < 1 or not 0 <= self.e < self.n:
            raise InvalidParams("need n >= 1 and 0 <= e < n")
        if self.p ** self.n > MAX_ORDER:
            raise InvalidParams(f"q = {self.p}^{self.n} exceeds the 2^16 cap")

    @property
    def q(self) -> int:
        return self.p ** self.n

    @property
    def ell(self) -> int:
        return self.p ** self.e

    @property
    def t(self) -> int:
        return self.q // self.ell

    @property
    def bounds(self) -> tuple:
        return (self.ell, self.t)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "e": self.e}


def mixed_radix_digits(t: int, bounds: Sequence[int]) -> tuple:
    out = []
    for b in bounds:
        out.append(t % b)
        t //= b
    return tuple(out)


def mixed_radix_index(digits: Sequence[int], bounds: Sequence[int]) -> int:
    """Inverse of :func:`mixed_radix_digits`; digits are reduced modulo their bound."""
    t, scale = 0, 1
    for d, b in zip(digits, bounds):
        t += (d % b) * scale
        scale *= b
    return t


@dataclass(frozen=True)
class OrderedGroup:
    q: int
    gens: tuple
    bounds: tuple
    elements: tuple
    family: Optional[str] = None
    params: object = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "bounds", tuple(int(b) for b in self.bounds))
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, t: int) -> Permutation:
        return self.elements[t]

    def exponents(self, t: int) -> tuple:
        return mixed_radix_digits(t, self.bounds)

    def index_of_exponents(self, digits: Sequence[int]) -> int:
        return mixed_radix_index(digits, self.bounds)

    def index_of(self, f: Permutation) -> int:
        """Position of ``f`` in ``elements``; -1 when absent."""
        lookup = self.__dict__.get("_lookup")
        if lookup is None:
            lookup = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_lookup", lookup)
        return lookup.get(f, -1)

    def as_array(self) -> np.ndarray:
        return np.array([e.images for e in self.elements], dtype=np.int64).reshape(len(self.elements), self.q)

    def gens_array(self) -> np.ndarray:
        return np.array([g.images for g in self.gens], dtype=np.int64).reshape(len(self.gens), self.q)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "bounds": list(self.bounds),
            "gens": [list(g.images) for g in self.gens],
            "elements": [list(e.images) for e in self.elements],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OrderedGroup":
        return cls(
            q=int(obj["q"]),
            gens=[Permutation(g) for g in obj["gens"]],
            bounds=obj["bounds"],
            elements=[Permutation(e) for e in obj["elements"]],
        )


def t31_generators(params: T31Params) -> list[Permutation]:
    """``[a_0, a_1, ..., a_{n-delta}]``.

    ``a_0`` increments the low digit t_0 modulo p^delta and ``a_i`` increments
    t_i modulo p, where c_t has t = t_0 + t_1 p^delta + ... + t_{n-delta} p^(n-1).
    """
    p, n, d, q = params.p, params.n, params.delta, params.q
    block = p ** d
    gens = [from_cycles(q, [range(j * block, (j + 1) * block) for j in range(p ** (n - d))])]
    for i in range(1, n - d + 1):
        stride = p ** (i + d - 1)
        period = stride * p
        cycles = [[j + r * stride for r in range(p)] for j in range(q) if j % period < stride]
        gens.append(from_cycles(q, cycles))
    return gens


def klenian_generators(params: KlenianParams) -> tuple[Permutation, Permutation]:
    """``(a, b)``: a is t disjoint l-cycles on consecutive blocks, b is l disjoint t-cycles of stride l."""
    q, ell, t = params.q, params.ell, params.t
    a = from_cycles(q, [range(i * ell, (i + 1) * ell) for i in range(t)])
    b = from_cycles(q, [[j + k * ell for k in range(t)] for j in range(ell)])
    return a, b


def enumerate_group(gens: Sequence[Permutation], bounds: Sequence[int], *, family=None, params=None) -> OrderedGroup:
    """Expand commuting generators into the ordered list of all exponent products.

    ``elements[t] = prod_k gens[k] ** d_k`` where ``d`` are the mixed-radix
    digits of ``t`` under ``bounds``.
    """
    gens = list(gens)
    if len(gens) != len(bounds) or not gens:
        raise InvalidParams("need one exponent bound per generator")
    q = gens[0].degree
    if any(g.degree != q for g in gens):
        raise InvalidParams("generators act on different degrees")
    if math.prod(bounds) != q:
        raise InvalidParams(f"product of bounds {math.prod(bounds)} != q = {q}")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if compose(gens[i], gens[j]) != compose(gens[j], gens[i]):
                raise NonCommutingGenerators(f"generators {i} and {j} do not commute")
    powers = [[power(g, k) for k in range(b)] for g, b in zip(gens, bounds)]
    elements = []
    for t in range(q):
        e = Permutation.identity(q)
        for k, d in enumerate(mixed_radix_digits(t, bounds)):
            e = compose(e, powers[k][d])
        elements.append(e)
    if len(set(elements)) != q:
        raise DegenerateGroup("exponent products are not pairwise distinct")
    return OrderedGroup(q, gens, bounds, elements, family=family, params=params)


def t31_group(params: T31Params) -> OrderedGroup:
    return enumerate_group(t31_generators(params), params.bounds, family="t31", params=params)


def klenian_group(params: KlenianParams) -> OrderedGroup:
    """The e-Klenian group with ``elements[s + r*p^e] = a^s b^r``."""
    return enumerate_group(klenian_generators(params), params.bounds, family="klenian", params=params)


@dataclass(frozen=True)
class ValidationReport:
    order_is_q: bool
    closed: bool
    abelian: bool
    fixed_point_free: bool
    contains_identity_at_0: bool

    @property
    def ok(self) -> bool:
        return all((self.order_is_q, self.closed, self.abelian, self.fixed_point_free, self.contains_identity_at_0))

    def as_dict(self) -> dict:
        return {
            "order_is_q": self.order_is_q,
            "closed": self.closed,
            "abelian": self.abelian,
            "fixed_point_free": self.fixed_point_free,
            "contains_identity_at_0": self.contains_identity_at_0,
        }


def _products(elements: np.ndarray) -> np.ndarray:
    # out[i, j] = elements[i] o elements[j]
    return elements[np.arange(len(elements))[:, None, None], elements[None, :, :]]


def validate_pgp_group(g: OrderedGroup) -> ValidationReport:
    """Check the permutation-group-polynomial conditions; never raises on bad input."""
    q = g.q
    try:
        E = g.as_array()
    except ValueError:
        return ValidationReport(False, False, False, False, False)
    m = len(E)
    members = {tuple(row) for row in E.tolist()}
    order_is_q = m == q and len(members) == q
    ident = np.arange(q)
    contains_identity_at_0 = m > 0 and bool(np.array_equal(E[0], ident))
    if m == 0:
        return ValidationReport(order_is_q, False, False, False, contains_identity_at_0)
    prods = _products(E)
    closed = all(tuple(row) in members for row in prods.reshape(-1, q).tolist())
    abelian = bool(np.array_equal(prods, prods.transpose(1, 0, 2)))
    moved = E != ident
    nonid = ~moved.all(axis=1) & moved.any(axis=1)
    fixed_point_free = not bool(nonid.any())
    return ValidationReport(order_is_q, closed, abelian, fixed_point_free, contains_identity_at_0)


def _prime_factors(m: int) -> list[int]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def _exact_log(x: int, p: int) -> int:
    k = 0
    while x % p == 0 and x > 1:
        x //= p
        k += 1
    if x != 1:
        raise NotAbelian(f"element-order counts are not powers of {p}; group is not abelian")
    return k


def group_invariants(g: OrderedGroup) -> list[int]:
    """Elementary divisors (sorted prime powers) of an abelian group.

    For each prime p, the number of elements whose order divides p^k equals
    p^(sum_i min(lambda_i, k)) when the p-part is the product of Z_{p^lambda_i};
    successive differences of those logarithms recover the lambda_i.
    """
    E = g.as_array()
    prods = _products(E)
    if not np.array_equal(prods, prods.transpose(1, 0, 2)):
        raise NotAbelian("group is not abelian")
    orders = [e.order() for e in g.elements]
    out = []
    for p in _prime_factors(len(orders)):
        logs = [0]
        k = 1
        while True:
            c = sum(1 for o in orders if (p ** k) % o == 0)
            logs.append(_exact_log(c, p))
            if logs[-1] == logs[-2]:
                break
            k += 1
        at_least = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        for lam in range(1, len(at_least)):
            count = at_least[lam - 1] - at_least[lam]
            out.extend([p ** lam] * count)
    return sorted(out)
