"""Closed-form counts of permutation group polynomials and brute-force S_q oracles.

Counts are exact Python integers.  The oracles enumerate all of S_q (sharded
by the image of 0) and are guarded to small q.
"""
from __future__ import annotations

import itertools
import logging
import math
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    BadRange,
    DivisibilityFails,
    GuardExceeded,
    InternalInconsistency,
    InvalidParams,
    OutOfRangeE,
    PreconditionJ,
)
from .groups import KlenianParams, OrderedGroup, T31Params, validate_pgp_group

log = logging.getLogger(__name__)

DEFAULT_GUARD = 9
# base-q image keys must fit in int64
MAX_SCAN_Q = 15


def phi_prime_power(p: int, k: int) -> int:
    """Euler's totient of p^k."""
    return 1 if k == 0 else p ** k - p ** (k - 1)


def _exact_div(num: int, den: int, what: str) -> int:
    quo, rem = divmod(num, den)
    if den <= 0 or rem:
        raise InternalInconsistency(f"{what}: {num} is not divisible by {den}")
    return quo


# -- t31 exponent families ------------------------------------------------

def matrix_A(vs: Sequence[Sequence[int]], p: int, delta: int) -> list[list[int]]:
    """Reduce exponent vectors V_0..V_m to the mod-p matrix whose rank decides N(V).

    Row 0 is (v_00, v_01 p^(delta-1), ..., v_0m p^(delta-1)) mod p; row k >= 1
    is (v_k0 / p^(delta-1), v_k1, ..., v_km) mod p.
    """
    scale = p ** (delta - 1)
    rows = [[vs[0][0] % p] + [(v * scale) % p for v in vs[0][1:]]]
    for k in range(1, len(vs)):
        if vs[k][0] % scale:
            raise DivisibilityFails(k)
        rows.append([(vs[k][0] // scale) % p] + [v % p for v in vs[k][1:]])
    return rows


def det_mod_p(A: Sequence[Sequence[int]], p: int) -> int:
    """Determinant modulo p via Bareiss fraction-free elimination over the integers."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    if n == 0:
        return 1 % p
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return (sign * M[n - 1][n - 1]) % p


def _reduce_t31_vectors(vs, params: T31Params) -> list[tuple]:
    m = params.n - params.delta + 1
    if len(vs) != m or any(len(v) != m for v in vs):
        raise InvalidParams(f"expected {m} exponent vectors of length {m}")
    return [tuple(int(x) % b for x, b in zip(v, params.bounds)) for v in vs]


def nset_nonempty_t31(vs: Sequence[Sequence[int]], params: T31Params) -> bool:
    """Whether some h conjugates each a_k onto the word with exponents V_k.

    Entries are read modulo the generator orders.  When this holds the set
    of such h has exactly p^n elements.
    """
    vs = _reduce_t31_vectors(vs, params)
    try:
        A = matrix_A(vs, params.p, params.delta)
    except DivisibilityFails:
        return False
    return det_mod_p(A, params.p) != 0


def t31_families(params: T31Params) -> Iterator[tuple]:
    """Every tuple (V_0, ..., V_{n-delta}) with V_k in Z_{p^delta} x Z_p^(n-delta)."""
    m = params.n - params.delta + 1
    vectors = list(itertools.product(*(range(b) for b in params.bounds)))
    return itertools.product(vectors, repeat=m)


def t31_family_targets(vs, g: OrderedGroup) -> dict:
    return {k: g.index_of_exponents(v) for k, v in enumerate(vs)}


def count_B_t31(params: T31Params) -> int:
    """Number of exponent families passing :func:`nset_nonempty_t31`, by enumeration."""
    return sum(1 for vs in t31_families(params) if nset_nonempty_t31(vs, params))


# -- e-Klenian exponent families -----------------------------------------

def _cyclic_order(x: int, m: int) -> int:
    return m // math.gcd(x, m)


def klenian_image_orders_ok(i: int, j: int, u: int, v: int, params: KlenianParams) -> bool:
    """Whether a^i b^j has order p^e and a^u b^v has order p^(n-e), as conjugates of a and b must."""
    small, big = params.ell, params.t
    ord_ij = math.lcm(_cyclic_order(i, small), _cyclic_order(j, big))
    ord_uv = math.lcm(_cyclic_order(u, small), _cyclic_order(v, big))
    return ord_ij == small and ord_uv == big


def nset_nonempty_klenian(i: int, j: int, u: int, v: int, params: KlenianParams, *, check_orders: bool = True) -> bool:
    """Whether some h maps a -> a^i b^j and b -> a^u b^v by conjugation.

    Requires 1 <= e <= n - e and p^(n-2e) | j.  The congruence scan alone is
    only decisive when the target words have the orders of a and b; with
    ``check_orders`` (the default) families failing that are reported empty
    before the scan runs.  The quantifier over all integers beta is checked on
    0 <= beta < p^(n-e): both congruences are periodic in beta with a period
    dividing p^(n-e).
    """
    p, n, e = params.p, params.n, params.e
    if e < 1 or e > n - e:
        raise BadRange(f"need 1 <= e <= n - e, got e={e}, n={n}")
    small, big = p ** e, p ** (n - e)
    if not (0 <= i < small and 0 <= u < small and 0 <= j < big and 0 <= v < big):
        raise BadRange(f"(i, j, u, v) = {(i, j, u, v)} outside Z_{small} x Z_{big} x Z_{small} x Z_{big}")
    if j % p ** (n - 2 * e):
        raise PreconditionJ(f"p^(n-2e) = {p ** (n - 2 * e)} does not divide j = {j}")
    if check_orders and not klenian_image_orders_ok(i, j, u, v, params):
        return False
    for alpha in range(e):
        pa = p ** alpha
        for beta in range(big):
            if (i * pa - beta * u) % small == 0 and (j * pa - beta * v) % big == 0:
                return False
    return True


def klenian_families(params: KlenianParams) -> Iterator[tuple]:
    small, big = params.ell, params.t
    return itertools.product(range(small), range(big), range(small), range(big))


def klenian_family_targets(i: int, j: int, u: int, v: int, g: OrderedGroup) -> dict:
    return {0: g.index_of_exponents((i, j)), 1: g.index_of_exponents((u, v))}


# -- closed forms ---------------------------------------------------------

def count_t31(params: T31Params) -> int:
    """Number of permutation group polynomials whose group is isomorphic to the t31 group."""
    p, n, d = params.p, params.n, params.delta
    q = p ** n
    den = p ** n - p ** ((d - 1) * (n - d + 1))
    for i in range(1, n - d + 1):
        den *= p ** (n - d + 1) - p ** i
    return _exact_div(math.factorial(q) * math.factorial(q - 1), den, "count_t31")


def normalizer_order_t31(params: T31Params) -> int:
    p, n, d = params.p, params.n, params.delta
    out = p ** n * (p ** n - p ** ((d - 1) * (n - d + 1)))
    for i in range(1, n - d + 1):
        out *= p ** (n - d + 1) - p ** i
    return out


def _klenian_e(params: KlenianParams) -> int:
    e, n = params.e, params.n
    if e == 0:
        raise OutOfRangeE("e = 0 (0-Klenian) is not counted here")
    return n - e if 2 * e > n else e


def count_klenian(params: KlenianParams) -> int:
    """Number of e-Klenian polynomials over GF(p^n), 1 <= e < n (e > n/2 is mapped to n - e)."""
    p, n = params.p, params.n
    e = _klenian_e(params)
    num = math.factorial(p ** n) * math.factorial(p ** n - 1)
    if 2 * e < n:
        den = p ** (2 * e) * phi_prime_power(p, e) * phi_prime_power(p, n - e)
    else:
        den = phi_prime_power(p, e) ** 2 * (p ** (2 * e) + p ** (2 * e - 1))
    return _exact_div(num, den, "count_klenian")


def normalizer_order_klenian(params: KlenianParams) -> int:
    p, n = params.p, params.n
    e = _klenian_e(params)
    if 2 * e < n:
        return p ** n * p ** (2 * e) * phi_prime_power(p, e) * phi_prime_power(p, n - e)
    return p ** n * p ** (2 * e - 1) * phi_prime_power(p, e) ** 2 * (p + 1)


# -- brute-force oracles over S_q ----------------------------------------

def _check_guard(q: int, guard: int) -> None:
    if q > guard:
        raise GuardExceeded(f"brute-force scan of S_{q} refused: q > guard={guard} (raise it with --guard)")
    if q > MAX_SCAN_Q:
        raise GuardExceeded(f"brute-force scans support q <= {MAX_SCAN_Q}")


def conjugation_scan(gens: np.ndarray, allowed_sets: Sequence[Sequence[int]]) -> int:
    """Count h in S_q with ``h g_k h^-1`` encoding into ``allowed_sets[k]`` for every k."""
    gens = np.asarray(gens, dtype=np.int64)
    m, q = gens.shape
    width = max(1, max(len(s) for s in allowed_sets))
    allowed = np.full((m, width), -1, dtype=np.int64)
    lengths = np.zeros(m, dtype=np.int64)
    for k, s in enumerate(allowed_sets):
        keys = sorted(set(int(c) for c in s))
        allowed[k, : len(keys)] = keys
        lengths[k] = len(keys)
    total = 0
    for first in range(q):
        total += kernels.scan_shard(gens, allowed, lengths, first)
        log.debug("shard h(0)=%d done, running total %d", first, total)
    return total


def _codes(perms) -> list[int]:
    return [kernels.encode_images(f.images, f.degree) for f in perms]


def normalizer_bruteforce(g: OrderedGroup, guard: int = DEFAULT_GUARD) -> int:
    """|N(G)| by testing h g_k h^-1 in G for every generator and every h in S_q."""
    _check_guard(g.q, guard)
    members = _codes(g.elements)
    return conjugation_scan(g.gens_array(), [members] * len(g.gens))


def centralizer_bruteforce(g: OrderedGroup, guard: int = DEFAULT_GUARD) -> int:
    """|C(G)|: permutations commuting with every generator."""
    _check_guard(g.q, guard)
    return conjugation_scan(g.gens_array(), [[c] for c in _codes(g.gens)])


def nset_bruteforce(g: OrderedGroup, targets: Mapping[int, int], guard: int = DEFAULT_GUARD) -> int:
    """Number of h with ``h gens[k] h^-1 == elements[targets[k]]`` for every generator k."""
    _check_guard(g.q, guard)
    if set(targets) != set(range(len(g.gens))):
        raise InvalidParams("targets must name a group element for every generator")
    codes = _codes(g.elements)
    return conjugation_scan(g.gens_array(), [[codes[targets[k]]] for k in range(len(g.gens))])


def count_equivalents(g: OrderedGroup, guard: int = DEFAULT_GUARD, use_shortcut: bool = True) -> int:
    """q * q! / |C(G)| permutation group polynomials equivalent to the one built on ``g``.

    For the two built-in families |C(G)| = q is used directly unless
    ``use_shortcut`` is False; otherwise the centralizer is counted by brute force.
    """
    if not validate_pgp_group(g).ok:
        raise InvalidParams("group does not satisfy the permutation-group-polynomial conditions")
    q = g.q
    if use_shortcut and g.family in ("t31", "klenian"):
        cent = q
    else:
        if q > guard:
            raise GuardExceeded(
                f"centralizer of a q={q} group needs a brute-force scan; q > guard={guard} (raise it with --guard)"
            )
        cent = centralizer_bruteforce(g, guard)
    return _exact_div(q * math.factorial(q), cent, "count_equivalents")


def count_report(family: str, params, closed_form: int, oracle=None) -> dict:
    return {
        "family": family,
        "params": params.to_json(),
        "closed_form": str(closed_form),
        "oracle": None if oracle is None else str(oracle),
        "match": None if oracle is None else closed_form == oracle,
    }
